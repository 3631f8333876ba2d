#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace shellax {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

/// Whitespace tokenization with `#` comments stripped.
inline std::vector<std::string> tokenize_line(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  return toks;
}

template <class Range, class Fn>
std::string join_map(const Range& r, const std::string& sep, Fn fn) {
  std::string out;
  bool first = true;
  for (const auto& x : r) {
    if (!first) out += sep;
    out += fn(x);
    first = false;
  }
  return out;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  return join_map(v, sep, [](const std::string& s) { return s; });
}

inline long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace shellax
