#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace shellax {

enum class Format { Text, Tsv };

/// Ordered list of pass/fail check lines plus informational key/value lines.
/// Lines appear in declaration order; witnesses in the order they were
/// recorded, so callers that iterate deterministically get stable output.
class Report {
 public:
  static constexpr std::size_t kKeptWitnesses = 8;

  struct Check {
    std::string id;
    std::size_t failures = 0;
    std::vector<std::string> witnesses;
    bool internal = false;
    bool pass() const { return failures == 0; }
  };

  struct Line {
    bool is_check;
    std::size_t index;
  };

  void declare(const std::string& id) { check_ref(id); }

  void fail(const std::string& id, const std::string& witness) {
    Check& c = check_ref(id);
    ++c.failures;
    if (c.witnesses.size() < kKeptWitnesses) c.witnesses.push_back(witness);
  }

  /// A failure that contradicts a theorem the library relies on.
  void fail_internal(const std::string& id, const std::string& witness) {
    fail(id, witness);
    check_ref(id).internal = true;
  }

  void expect(const std::string& id, bool ok, const std::string& witness) {
    if (ok)
      declare(id);
    else
      fail(id, witness);
  }

  void info(const std::string& key, const std::string& value) {
    infos_.emplace_back(key, value);
    lines_.push_back({false, infos_.size() - 1});
  }

  /// Appends all lines of `other`, prefixing check ids with `prefix`.
  void merge(const Report& other, const std::string& prefix = "") {
    for (const Line& l : other.lines_) {
      if (l.is_check) {
        const Check& src = other.checks_[l.index];
        Check& dst = check_ref(prefix + src.id);
        dst.failures += src.failures;
        dst.internal = dst.internal || src.internal;
        for (const auto& w : src.witnesses)
          if (dst.witnesses.size() < kKeptWitnesses) dst.witnesses.push_back(w);
      } else {
        info(other.infos_[l.index].first, other.infos_[l.index].second);
      }
    }
  }

  const Check* find(const std::string& id) const {
    for (const auto& c : checks_)
      if (c.id == id) return &c;
    return nullptr;
  }

  /// True iff the check was declared and has no failures.
  bool passed(const std::string& id) const {
    const Check* c = find(id);
    return c != nullptr && c->pass();
  }

  bool has(const std::string& id) const { return find(id) != nullptr; }

  bool all_passed() const {
    for (const auto& c : checks_)
      if (!c.pass()) return false;
    return true;
  }

  bool any_internal_failure() const {
    for (const auto& c : checks_)
      if (!c.pass() && c.internal) return true;
    return false;
  }

  const std::vector<Check>& checks() const { return checks_; }

  std::string info_value(const std::string& key) const {
    for (const auto& [k, v] : infos_)
      if (k == key) return v;
    return {};
  }

  void write(std::ostream& out, Format fmt = Format::Text) const {
    for (const Line& l : lines_) {
      if (!l.is_check) {
        const auto& [k, v] = infos_[l.index];
        if (fmt == Format::Tsv)
          out << "INFO\t" << k << '\t' << v << '\n';
        else
          out << "INFO " << k << ' ' << v << '\n';
        continue;
      }
      const Check& c = checks_[l.index];
      if (fmt == Format::Tsv) {
        out << "CHECK\t" << c.id << '\t' << (c.pass() ? "PASS" : "FAIL") << '\t' << c.failures << '\t'
            << (c.witnesses.empty() ? "" : c.witnesses.front()) << '\n';
        continue;
      }
      out << "CHECK " << c.id << (c.pass() ? " PASS" : " FAIL");
      if (!c.pass()) {
        if (!c.witnesses.empty()) out << ' ' << c.witnesses.front();
        if (c.failures > 1) out << " (+" << (c.failures - 1) << " more)";
      }
      out << '\n';
    }
  }

 private:
  Check& check_ref(const std::string& id) {
    for (auto& c : checks_)
      if (c.id == id) return c;
    checks_.push_back(Check{id, 0, {}, false});
    lines_.push_back({true, checks_.size() - 1});
    return checks_.back();
  }

  std::vector<Check> checks_;
  std::vector<std::pair<std::string, std::string>> infos_;
  std::vector<Line> lines_;
};

}  // namespace shellax
