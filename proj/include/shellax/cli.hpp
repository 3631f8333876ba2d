#pragma once

#include "shellax/arrangement.hpp"
#include "shellax/buildings.hpp"
#include "shellax/catalog.hpp"
#include "shellax/complex.hpp"
#include "shellax/flags.hpp"
#include "shellax/lrb.hpp"
#include "shellax/report.hpp"
#include "shellax/shelling.hpp"
#include "shellax/structures.hpp"
#include "shellax/walks.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace shellax::cli {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kInternal = 3 };

struct Globals {
  std::string format = "text";
  std::size_t cap = 10000;
  std::uint64_t seed = 1;
  bool expect_fail = false;

  Format fmt() const { return format == "tsv" ? Format::Tsv : Format::Text; }
};

/// Bad input or an unmet precondition, as opposed to a property that fails.
inline bool is_usage_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::Precondition:
    case ErrorKind::ParseError:
    case ErrorKind::NotAFace:
    case ErrorKind::NeedsLabels:
    case ErrorKind::BadN:
    case ErrorKind::ScaleExceeded:
    case ErrorKind::DegenerateNormal:
    case ErrorKind::NonPrimeField:
    case ErrorKind::RankMismatch:
    case ErrorKind::NotThin:
    case ErrorKind::NotInApartment:
    case ErrorKind::NotOpposite:
    case ErrorKind::EmptyInput:
    case ErrorKind::NotPure:
    case ErrorKind::BadLabelling:
    case ErrorKind::NotSimplicial:
      return true;
    default:
      return false;
  }
}

inline int report_status(const Report& r) {
  if (r.any_internal_failure()) return kInternal;
  return r.all_passed() ? kOk : kCheckFailed;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Precondition, "cannot open '" + path + "'");
  return in;
}

/// "auto": bundled structure if any, else the metric one. "metric", "bundled",
/// or a structure file whose missing parts are derived by the conversions.
/// Returns nullopt after recording the failed gate checks in `r`.
inline std::optional<MetricStructure> resolve_structure(const CatalogEntry& e, const std::string& choice, Report& r) {
  const Complex& cx = e.cx();
  if (choice == "bundled" || (choice == "auto" && e.bundled)) {
    if (!e.bundled) fail(ErrorKind::Precondition, e.name + " has no bundled structure");
    return e.bundled;
  }
  if (choice == "metric" || choice == "auto") {
    GateResult gate = check_gate_property(cx);
    r.merge(gate.report);
    if (!gate.holds) return std::nullopt;
    return metric_structure(cx);
  }
  std::ifstream in = open_input(choice);
  StructureInput s = parse_structure(in, cx);
  MetricStructure m;
  if (s.P) {
    m.P = *s.P;
    m.R = s.R ? *s.R : p_to_r(cx, m.P);
    m.S = s.S ? *s.S : r_to_s(cx, m.R);
  } else if (s.R) {
    m.R = *s.R;
    m.S = s.S ? *s.S : r_to_s(cx, m.R);
    m.P = s_to_p(cx, m.S);
  } else if (s.S) {
    m.S = *s.S;
    m.P = s_to_p(cx, m.S);
    m.R = p_to_r(cx, m.P);
  } else {
    fail(ErrorKind::EmptyInput, "structure file '" + choice + "' declares nothing");
  }
  return m;
}

/// Runs `fn`; a non-internal, non-usage error becomes a failed check `id`.
template <class Fn>
void attempt(Report& r, const std::string& id, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (is_internal(e.kind()) || is_usage_error(e.kind())) throw;
    r.fail(id, std::string(to_string(e.kind())) + ": " + e.detail());
  }
}

struct Arguments {
  std::string complex;
  std::string structure = "auto";
  std::string mode = "exhaustive";
  bool opposite = false;
  std::string order;
  std::string link;
  bool reverse = false;
  bool unlabelled = false;
  bool skeleton = false;
  bool local = false;
  std::string weights;
  int rank = 1;
  std::string arrangement_file;
  std::string coxeter;
  int boolean = 0;
  int lines = 0;
  bool generic4 = false;
  int free = 0;
  std::string lrb_file;
  std::string check;
  bool list = false;
  int n = 3;
  int q = 2;
  std::string name;
};

// ---- commands ------------------------------------------------------------------------

inline int cmd_check_axioms(const Arguments& a, const Globals& g, std::ostream& out) {
  CatalogEntry e = load_entry(a.complex);
  const Complex& cx = e.cx();
  Report r;
  auto m = resolve_structure(e, a.structure, r);
  if (m) {
    SOptions opt;
    opt.mode = a.mode == "sampled" ? S2Mode::Sampled : S2Mode::Exhaustive;
    opt.cap = g.cap;
    opt.seed = g.seed;
    attempt(r, "P", [&] { r.merge(check_P(cx, m->P)); });
    attempt(r, "R", [&] { r.merge(check_R(cx, m->R)); });
    attempt(r, "S", [&] { r.merge(check_S(cx, m->S, opt)); });
    attempt(r, "ROUNDTRIP", [&] { r.merge(check_round_trips(cx, m->P, m->R, m->S)); });
    if (a.opposite) attempt(r, "OPP", [&] { r.merge(check_opposite(cx, m->P, m->R, m->S, find_opposition(cx, m->R))); });
  }
  r.write(out, g.fmt());
  return report_status(r);
}

inline int cmd_shell(const Arguments& a, const Globals& g, std::ostream& out) {
  CatalogEntry e = load_entry(a.complex);
  const Complex& cx = e.cx();
  Report r;
  ShellingOrder order;
  if (!a.order.empty()) {
    std::ifstream in = open_input(a.order);
    order = parse_shelling_order(in, cx);
  } else {
    auto m = resolve_structure(e, a.structure, r);
    if (!m) {
      r.write(out, g.fmt());
      return report_status(r);
    }
    for (int x : first_linear_extension(m->S.le[0])) order.push_back(x);
  }
  r.declare("SHELL");
  std::optional<ShellingCertificate> cert;
  attempt(r, "SHELL", [&] { cert = verify_shelling(cx, order); });
  if (cert) {
    write_certificate(out, cx, *cert);
    r.info("spheres", std::to_string(sphere_count(cx, *cert)));
    bool thin = is_thin(cx).thin;
    BitMatrix refined = restriction_to_order(cx, cert->restriction, true);
    BitMatrix plain = restriction_to_order(cx, cert->restriction, false);
    if (thin)
      r.expect("COMP.refined", refined == plain, "refined and unrefined closures differ");
    else
      r.info("COMP.refined", refined == plain ? "same" : "differs");
    if (a.reverse) r.merge(reverse_shelling_check(cx, order));
    if (!a.link.empty()) {
      LinkShelling ls = link_shelling(cx, order, cx.parse_face(a.link));
      r.declare("LINK");
      r.info("link.chambers", std::to_string(ls.link.num_chambers()));
      for (ChamberId d : ls.order) out << "link R " << ls.link.chamber_name(d) << " -> " << ls.link.face_name(ls.certificate.restriction[d]) << '\n';
    }
  }
  r.write(out, g.fmt());
  return report_status(r);
}

inline int cmd_hvector(const Arguments& a, const Globals& g, std::ostream& out) {
  CatalogEntry e = load_entry(a.complex);
  const Complex& cx = e.cx();
  const bool labelled = cx.labelled() && !a.unlabelled;
  FlagPair fp = flag_vectors(cx, labelled);
  write_flag_vector(out, cx, "f", fp.f, g.fmt());
  write_flag_vector(out, cx, "h", fp.h, g.fmt());
  Report r;
  r.merge(ds_check(cx, fp.h));
  auto m = resolve_structure(e, a.structure, r);
  if (!m) {
    r.write(out, g.fmt());
    return report_status(r);
  }
  r.merge(beta_report(cx, m->R, labelled));
  if (a.local) {
    LocalFlagTable t = local_flags(cx, m->R, labelled);
    r.merge(local_flag_report(cx, t, labelled));
    r.merge(local_ds_check(cx, t));
    if (!labelled) r.merge(local_bound_check(cx, t));
  }
  if (a.skeleton) {
    FlagVector beta = beta_from_restriction(cx, m->R, 0, false);
    r.declare("SKELETON");
    for (int k = 1; k <= cx.rank(); ++k) r.info("spheres[" + std::to_string(k) + "]", std::to_string(skeleton_spheres(cx, beta, k)));
  }
  r.write(out, g.fmt());
  return report_status(r);
}

inline FaceWeights read_weights(const std::string& path, const SigmaSource& s) {
  std::map<std::string, int> by_name;
  for (int x = 0; x < s.size(); ++x) by_name.emplace(s.name(x), x);
  std::ifstream in = open_input(path);
  return parse_weights(in, [&](const std::string& n) {
    auto it = by_name.find(n);
    if (it == by_name.end()) fail(ErrorKind::NotAFace, "unknown face '" + n + "'");
    return it->second;
  });
}

inline int cmd_walk(const Arguments& a, const Globals& g, std::ostream& out) {
  CatalogEntry e = load_entry(a.complex);
  Report r;
  std::optional<Lrb> lrb;
  std::optional<MetricStructure> m;
  std::optional<SigmaSource> s;
  if (e.faces) {
    lrb = arrangement_lrb(*e.faces);
    s = SigmaSource::from_lrb(*lrb);
  } else {
    m = resolve_structure(e, a.structure, r);
    if (!m) {
      r.write(out, g.fmt());
      return report_status(r);
    }
    s = SigmaSource::from_projection(e.cx(), m->P);
  }
  FaceWeights w = a.weights.empty() ? uniform_rank_weights(*s, a.rank) : read_weights(a.weights, *s);
  WalkChain chain = walk(*s, w);
  write_stationary(out, *s, chain, g.fmt());
  r.merge(chain.report);
  r.write(out, g.fmt());
  return report_status(r);
}

inline int cmd_arrangement(const Arguments& a, const Globals& g, std::ostream& out) {
  int sources = !a.arrangement_file.empty() + !a.coxeter.empty() + (a.boolean > 0) + (a.lines > 0) + a.generic4 + (a.free > 0) +
                !a.lrb_file.empty();
  if (sources != 1) fail(ErrorKind::Precondition, "give exactly one of FILE, --coxeter, --boolean, --lines, --generic4, --free, --lrb");
  std::optional<Arrangement> arr;
  std::optional<Lrb> lrb;
  if (!a.arrangement_file.empty()) {
    std::ifstream in = open_input(a.arrangement_file);
    arr = parse_arrangement(in);
  } else if (!a.coxeter.empty()) {
    auto [family, n] = coxeter_type(a.coxeter);
    arr = coxeter_arrangement(family, n);
  } else if (a.boolean > 0) {
    arr = boolean_arrangement(a.boolean);
  } else if (a.lines > 0) {
    arr = lines_arrangement(a.lines);
  } else if (a.generic4) {
    arr = generic_four_planes();
  } else if (a.free > 0) {
    lrb = free_lrb(a.free);
  } else {
    std::ifstream in = open_input(a.lrb_file);
    lrb = parse_lrb(in);
  }
  std::optional<FaceEnumeration> fe;
  if (arr) {
    fe = enumerate_faces(*arr);
    if (a.check != "faces" && a.check != "complex") lrb = arrangement_lrb(*fe);
  }
  auto need_arrangement = [&] {
    if (!fe) fail(ErrorKind::Precondition, "--check " + a.check + " needs a hyperplane arrangement");
  };
  Report r;
  if (a.check == "faces") {
    need_arrangement();
    CatalogEntry e;
    e.name = "arrangement";
    e.faces = fe;
    r.merge(arrangement_entry_report(e));
    r.info("simplicial", is_simplicial(*fe).simplicial ? "yes" : "no");
    r.declare("FACES.realizable");
    for (int f = 0; f < fe->size(); ++f) {
      if (a.list) out << "face " << sign_string(fe->faces[f]) << " rank " << fe->rank[f] << '\n';
      if (!is_realizable(*arr, fe->faces[f])) r.fail("FACES.realizable", sign_string(fe->faces[f]));
    }
  } else if (a.check == "complex") {
    need_arrangement();
    write_complex(out, arrangement_complex(*fe).complex);
    return kOk;
  } else if (a.check == "lrb") {
    if (a.list) write_lrb(out, *lrb);
    r.merge(check_lrb(*lrb));
  } else if (a.check == "commutativity") {
    r.merge(check_commutativity(SigmaSource::from_lrb(*lrb), false));
  } else if (a.check == "uniformity") {
    r.merge(check_uniformity(SigmaSource::from_lrb(*lrb)));
  } else if (a.check == "rank3") {
    need_arrangement();
    r.merge(rank3_harness(*arr));
  } else if (a.check == "walk") {
    SigmaSource s = SigmaSource::from_lrb(*lrb);
    FaceWeights w = a.weights.empty() ? uniform_rank_weights(s, a.rank) : read_weights(a.weights, s);
    WalkChain chain = walk(s, w);
    write_stationary(out, s, chain, g.fmt());
    r.merge(chain.report);
  }
  r.write(out, g.fmt());
  return report_status(r);
}

inline int cmd_building(const Arguments& a, const Globals& g, std::ostream& out) {
  Building b = build_building(a.n, a.q);
  Report r;
  if (a.check == "counts") {
    r.merge(building_counts(b));
  } else if (a.check == "retraction") {
    MetricStructure m = metric_structure(b.complex);
    enumerate_apartments(b);
    r.merge(retraction_report(b, m, b.chamber_frames[0].front(), 0));
  } else if (a.check == "gate") {
    GateResult gate = check_gate_property(b.complex);
    r.merge(gate.report);
    if (gate.holds) {
      MetricStructure m = metric_structure(b.complex);
      enumerate_apartments(b);
      r.merge(apartment_gate_report(b, m, b.chamber_frames[0].front()));
    }
  } else {
    MetricStructure m = metric_structure(b.complex);
    HqResult hq = hq_polynomials(b, m);
    write_hq(out, b.complex, hq.poly, g.fmt());
    r.merge(hq.report);
    const Perm w0 = longest_perm(b.n);
    ChamberId cbar = -1;
    for (ChamberId x : b.frame_chambers[b.chamber_frames[0].front()])
      if (w_distance(b, 0, x) == w0) cbar = x;
    r.info("base", b.complex.chamber_name(0) + " opposite " + b.complex.chamber_name(cbar));
    r.merge(apartment_count_identity(b, 0, cbar));
  }
  r.write(out, g.fmt());
  return report_status(r);
}

inline int cmd_catalog(const Arguments& a, const Globals& g, std::ostream& out) {
  if (a.name.empty()) {
    for (const auto& n : catalog_names()) out << '@' << n << '\n';
    return kOk;
  }
  CatalogEntry e = make_entry(a.name);
  if (a.check == "self") {
    Report r = entry_report(e);
    r.write(out, g.fmt());
    return report_status(r);
  }
  if (e.complex)
    write_complex(out, *e.complex);
  else
    write_arrangement(out, e.faces->arrangement);
  return kOk;
}

// ---- entry point -----------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks shelling, projection and restriction axioms on chamber complexes", "shellax"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  Arguments a;
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "tsv"}));
  app.add_option("--cap", g.cap, "Linear extensions examined per chamber before sampling");
  app.add_option("--seed", g.seed, "Seed for sampled linear extensions");
  app.add_flag("--expect-fail", g.expect_fail, "Exit 0 when a check fails and 1 when all pass");

  auto add_complex = [&](CLI::App* sub) { sub->add_option("complex", a.complex, "Complex file or @catalog-entry")->required(); };
  auto add_structure = [&](CLI::App* sub) {
    sub->add_option("--structure", a.structure, "auto, metric, bundled or a structure file");
  };

  CLI::App* check = app.add_subcommand("check-axioms", "Verify the projection, restriction and order axioms");
  add_complex(check);
  add_structure(check);
  check->add_option("--mode", a.mode, "Linear extension mode")->check(CLI::IsMember({"exhaustive", "sampled"}));
  check->add_flag("--opposite", a.opposite, "Also check the opposition axioms");

  CLI::App* shell = app.add_subcommand("shell", "Verify a shelling order and print its certificate");
  add_complex(shell);
  add_structure(shell);
  shell->add_option("--order", a.order, "Shelling order file (default: a linear extension of the first chamber's order)");
  shell->add_option("--link", a.link, "Also shell the link of this face");
  shell->add_flag("--reverse", a.reverse, "Check the reversed order (thin complexes)");

  CLI::App* hvec = app.add_subcommand("hvector", "Flag f- and h-vectors with Dehn-Sommerville checks");
  add_complex(hvec);
  add_structure(hvec);
  hvec->add_flag("--unlabelled", a.unlabelled, "Index by rank instead of type");
  hvec->add_flag("--skeleton", a.skeleton, "Sphere counts of the skeleta");
  hvec->add_flag("--local", a.local, "Local h-vectors h(D)");

  CLI::App* walk_cmd = app.add_subcommand("walk", "Exact stationary distribution of a face walk");
  add_complex(walk_cmd);
  add_structure(walk_cmd);
  walk_cmd->add_option("--weights", a.weights, "Weights file");
  walk_cmd->add_option("--rank", a.rank, "Uniform weights on this rank (default 1)");

  CLI::App* arr = app.add_subcommand("arrangement", "Hyperplane arrangements and left regular bands");
  arr->add_option("file", a.arrangement_file, "Arrangement file");
  arr->add_option("--coxeter", a.coxeter, "Reflection arrangement such as A3, B3, D4");
  arr->add_option("--boolean", a.boolean, "Coordinate hyperplanes in dimension N");
  arr->add_option("--lines", a.lines, "N lines through the origin in the plane");
  arr->add_flag("--generic4", a.generic4, "Four generic planes in dimension 3");
  arr->add_option("--free", a.free, "Free left regular band on N generators");
  arr->add_option("--lrb", a.lrb_file, "Left regular band table file");
  arr->add_option("--check", a.check, "What to check")
      ->check(CLI::IsMember({"faces", "complex", "lrb", "commutativity", "uniformity", "rank3", "walk"}))
      ->required();
  arr->add_option("--weights", a.weights, "Weights file for --check walk");
  arr->add_option("--rank", a.rank, "Uniform weights on this rank for --check walk");
  arr->add_flag("--list", a.list, "Also print faces or the product table");

  CLI::App* bld = app.add_subcommand("building", "Flag complex of subspaces of F_q^n");
  bld->add_option("--n", a.n, "Dimension of the vector space")->required();
  bld->add_option("--q", a.q, "Prime field size")->required();
  bld->add_option("--check", a.check, "What to check")
      ->check(CLI::IsMember({"duality", "counts", "gate", "retraction"}))
      ->required();

  CLI::App* cat = app.add_subcommand("catalog", "List, print or self-check catalog entries");
  cat->add_option("name", a.name, "Entry such as @hexagon or @ngon:6");
  cat->add_flag("--check{self}", a.check, "Run the entry's own checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  int status;
  try {
    if (*check)
      status = cmd_check_axioms(a, g, out);
    else if (*shell)
      status = cmd_shell(a, g, out);
    else if (*hvec)
      status = cmd_hvector(a, g, out);
    else if (*walk_cmd)
      status = cmd_walk(a, g, out);
    else if (*arr)
      status = cmd_arrangement(a, g, out);
    else if (*bld)
      status = cmd_building(a, g, out);
    else
      status = cmd_catalog(a, g, out);
  } catch (const Error& e) {
    if (is_internal(e.kind())) {
      err << "internal error: " << to_string(e.kind()) << ": " << e.detail() << '\n';
      return kInternal;
    }
    if (is_usage_error(e.kind())) {
      err << "error: " << to_string(e.kind()) << ": " << e.detail() << '\n';
      return kUsage;
    }
    Report r;
    r.fail(std::string(to_string(e.kind())), e.detail());
    r.write(out, g.fmt());
    status = kCheckFailed;
  }
  if (g.expect_fail && (status == kOk || status == kCheckFailed)) status = status == kOk ? kCheckFailed : kOk;
  return status;
}

}  // namespace shellax::cli
