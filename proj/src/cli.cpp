#include "koszulkit/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "koszulkit/errors.hpp"
#include "koszulkit/problem.hpp"
#include "koszulkit/report.hpp"
#include "koszulkit/selftest.hpp"

namespace koszulkit {

namespace {

struct Outcome {
  Json result;
  std::string text;
  bool alarm = false;
};

struct Context {
  const ProblemFile& pf;
  const std::map<std::string, std::string>& flags;
  const std::set<std::string>& switches;

  // Command-line flag first, then the task block.
  std::optional<std::string> get(const std::string& key) const {
    if (auto it = flags.find(key); it != flags.end() && !it->second.empty()) return it->second;
    return pf.option(key);
  }
  std::string need(const std::string& key) const {
    auto v = get(key);
    if (!v) throw InputError("missing '" + key + "' (task key or --" + key + ")");
    return *v;
  }
  std::optional<int> integer(const std::string& key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    std::istringstream s(*v);
    int x = 0;
    std::string extra;
    if (!(s >> x) || (s >> extra)) throw InputError("'" + key + "' must be an integer, got '" + *v + "'");
    return x;
  }
  int need_int(const std::string& key) const {
    need(key);
    return *integer(key);
  }
  bool on(const std::string& key) const {
    if (switches.count(key)) return true;
    auto v = pf.option(key);
    return v && (*v == "true" || *v == "yes" || *v == "1");
  }
};

std::string lengths(const std::map<int, long>& m) {
  std::ostringstream s;
  bool first = true;
  for (const auto& [i, l] : m) {
    s << (first ? "" : " ") << i << ":" << l;
    first = false;
  }
  return s.str();
}

std::string dim_text(const std::optional<long>& l) { return l ? std::to_string(*l) : "inf"; }

LocalOptions local_options(const Context& c, const std::optional<Point>& at) {
  LocalOptions opts;
  if (auto s = c.integer("smax")) opts.s_max = *s;
  opts.single_sop = c.on("single-sop");
  if (auto names = c.get("sops"))
    for (const auto& n : split_list(*names, ',')) {
      const auto& sop = c.pf.sop(n);
      if (at && !(sop.point == *at)) throw InputError("sop '" + n + "' is taken at " + format_point(sop.point) + ", not at " + format_point(*at));
      opts.sops.push_back(sop.f);
    }
  return opts;
}

std::vector<Point> sample_points(const Context& c, const AlgebraPtr& algebra) {
  if (auto names = c.get("points")) {
    std::vector<Point> out;
    for (const auto& n : split_list(*names, ',')) out.push_back(c.pf.point(n));
    return out;
  }
  if (auto p = c.get("point"); p && !c.get("grid")) return {c.pf.point(*p)};
  return integer_grid(algebra, c.integer("grid").value_or(2));
}

std::string evidence_line(const SopEvidence& e) {
  std::ostringstream s;
  s << "  sop " << e.sop.to_string() << "\n    tor " << lengths(e.table.tor) << "\n    ext " << lengths(e.table.ext)
    << "\n    first nonzero ext: " << (e.first_nonzero_ext ? std::to_string(*e.first_nonzero_ext) : "none") << "\n";
  return s.str();
}

// ---------------------------------------------------------------- commands

Outcome cmd_depth(const Context& c) {
  const auto obj = c.need("object");
  const FPModule& m = c.pf.module(obj);
  Point a = c.pf.point(c.need("point"));
  auto r = depth(m, a, local_options(c, a));
  std::ostringstream t;
  t << "depth of " << obj << " at " << format_point(a) << "\n  local dimension " << r.local_dim << "\n  depth "
    << (r.depth ? std::to_string(*r.depth) : "inf (stalk is zero)") << ", codepth " << (r.codepth() ? std::to_string(*r.codepth()) : "-") << "\n";
  for (const auto& e : r.sops) t << evidence_line(e);
  Json j = to_json(r);
  j["object"] = obj;
  return {j, t.str()};
}

Outcome cmd_tor_table(const Context& c) {
  const auto obj = c.need("object");
  BoundedComplex k = c.pf.complex(obj);
  Point a = c.pf.point(c.need("point"));
  LocalOptions opts = local_options(c, a);
  opts.single_sop = true;
  auto sop = choose_sops(k.algebra(), a, opts).front();
  auto table = koszul_table(sop, k);
  if (auto d = c.get("degrees")) {
    auto parts = split_list(*d, ':');
    if (parts.size() != 2) throw InputError("--degrees expects lo:hi");
    int lo = 0, hi = 0;
    std::istringstream ls(parts[0]), hs(parts[1]);
    if (!(ls >> lo) || !(hs >> hi)) throw InputError("--degrees expects integers lo:hi");
    std::erase_if(table.tor, [&](const auto& kv) { return kv.first < lo || kv.first > hi; });
    std::erase_if(table.ext, [&](const auto& kv) { return kv.first < lo || kv.first > hi; });
  }
  std::ostringstream t;
  t << "Koszul table of " << obj << " for " << sop.to_string() << "\n  tor " << lengths(table.tor) << "\n  ext " << lengths(table.ext) << "\n";
  return {Json{{"object", obj}, {"sop", sop.to_string()}, {"table", to_json(table)}}, t.str()};
}

Outcome cmd_sop_check(const Context& c) {
  const AlgebraPtr& alg = c.pf.point_algebra();
  Point a = c.pf.point(c.need("point"));
  SopOptions so;
  if (auto s = c.integer("smax")) so.s_max = *s;
  std::ostringstream t;
  Json cands = Json::array();
  t << "systems of parameters at " << format_point(a) << "\n";
  std::vector<std::vector<Polynomial>> lists;
  if (auto names = c.get("sops"))
    for (const auto& n : split_list(*names, ',')) lists.push_back(c.pf.sop(n).f);
  if (auto raw = c.pf.option("candidates"))
    for (const auto& item : split_list(*raw, ';')) lists.push_back(c.pf.polynomials(item));
  for (const auto& f : lists) {
    std::string shown;
    for (const auto& p : f) shown += (shown.empty() ? "" : ", ") + p.to_string();
    Json row{{"sop", "(" + shown + ")"}};
    try {
      auto sop = validate_sop(alg, a, f, so);
      row["status"] = "valid";
      row["dim"] = sop.dim;
      t << "  (" << shown << "): valid, d = " << sop.dim << "\n";
    } catch (const InconclusiveError& e) {
      row["status"] = "inconclusive";
      row["reason"] = e.what();
      t << "  (" << shown << "): inconclusive, " << e.what() << "\n";
    } catch (const InputError& e) {
      row["status"] = "invalid";
      row["reason"] = e.what();
      t << "  (" << shown << "): invalid, " << e.what() << "\n";
    }
    cands.push_back(row);
  }
  Json j{{"point", to_json(a)}, {"candidates", cands}};
  if (auto n = c.integer("suggest")) {
    if (*n < 1) throw InputError("--suggest needs a positive count");
    Json sug = Json::array();
    auto found = suggest_sop(alg, a, static_cast<std::size_t>(*n), c.integer("budget").value_or(16), so);
    t << "  suggested:\n";
    for (const auto& s : found) {
      sug.push_back(s.to_string());
      t << "    " << s.to_string() << "\n";
    }
    j["suggested"] = sug;
  }
  return {j, t.str()};
}

Outcome cmd_sm(const Context& c) {
  const auto obj = c.need("object");
  const FPModule& f = c.pf.module(obj);
  const AlgebraPtr& alg = f.algebra();
  const int m = c.need_int("m");
  std::optional<int> n = c.integer("n");
  if (!n) {
    if (!alg->is_polynomial_ring()) throw InputError("'n' is required over a quotient ring");
    n = alg->num_vars();
  }
  std::vector<Point> points;
  if (c.get("grid")) points = integer_grid(alg, *c.integer("grid"));
  else points = sample_points(c, alg);
  std::ostringstream t;
  t << "S_" << m << " membership of " << obj << " (n = " << *n << ")\n";
  Json rows = Json::array();
  bool alarm = false;
  for (const auto& a : points) {
    auto v = sm_membership(f, a, m, *n, local_options(c, a));
    Json row = to_json(v);
    std::string smooth = "-";
    if (alg->is_polynomial_ring()) {
      bool s = sm_membership_smooth(f, a, m, *n);
      row["smooth_route"] = s;
      smooth = s ? "yes" : "no";
      if (s != v.member) {
        alarm = true;
        row["alarm"] = "Koszul and residue-field routes disagree";
      }
    }
    t << "  " << format_point(a) << ": " << (v.member ? "member" : "not a member") << ", codepth "
      << (v.report.codepth() ? std::to_string(*v.report.codepth()) : "-") << ", smooth route " << smooth << "\n";
    rows.push_back(row);
  }
  return {Json{{"object", obj}, {"m", m}, {"n", *n}, {"points", rows}}, t.str(), alarm};
}

Outcome cmd_support_check(const Context& c) {
  const auto obj = c.need("object");
  BoundedComplex k = c.pf.complex(obj);
  Ideal j = Ideal::parse(k.algebra()->ring(), c.need("support"));
  const int d = c.need_int("codim");
  auto points = sample_points(c, k.algebra());
  auto r = check_support(k, j, d, points, local_options(c, std::nullopt));
  std::ostringstream t;
  t << "support criterion for " << obj << ", Y = V(" << j.to_string() << "), codim " << d << "\n";
  for (const auto& p : r.points)
    t << "  " << format_point(p.point) << (p.on_y ? " on Y " : " off Y") << ": " << to_string(p.verdict) << (p.note.empty() ? "" : ", " + p.note) << "\n";
  t << "  hypotheses " << to_string(r.hypotheses) << ", conclusion " << to_string(r.conclusion.verdict())
    << (r.conclusion.zero_object ? " (the complex is zero)" : "") << "\n";
  if (r.alarm()) t << "  ALARM: hypotheses hold at every sampled point but the conclusion fails\n";
  t << "  " << kIrreducibilityAssumption << "\n";
  Json jr = to_json(r);
  jr["object"] = obj;
  return {jr, t.str(), r.alarm()};
}

Outcome cmd_span_check(const Context& c) {
  const auto obj = c.need("object");
  BoundedComplex e = c.pf.complex(obj);
  auto r = spanning_test(e, sample_points(c, e.algebra()), local_options(c, std::nullopt));
  std::ostringstream t;
  t << "spanning test for " << obj << ": " << to_string(r.verdict) << "\n";
  if (r.q0) t << "  lowest nonzero cohomology degree " << *r.q0 << "\n";
  else t << "  the complex is exact\n";
  if (!r.note.empty()) t << "  " << r.note << "\n";
  if (c.on("witnesses"))
    for (const auto& w : r.witnesses)
      t << "  witness at " << format_point(w.point) << ": " << w.sop.to_string() << ", l = " << w.l << ", Hom^" << w.index << " has length "
        << w.length << "\n";
  Json j = to_json(r);
  j["object"] = obj;
  return {j, t.str()};
}

Outcome cmd_ff_check(const Context& c) {
  if (!c.pf.pair) throw InputError("ff-check needs a [split] section");
  const auto name = c.need("kernel");
  Kernel k(*c.pf.pair, c.pf.complex(name));
  const AlgebraPtr& a = c.pf.pair->a();
  std::optional<int> dim_x = c.integer("dim_x");
  if (!dim_x) {
    if (!a->is_polynomial_ring()) throw InputError("'dim_x' is required when the x-side has a quotient ideal");
    dim_x = a->num_vars();
  }
  std::vector<std::pair<Point, Point>> pairs;
  if (auto p = c.get("pairs"))
    for (const auto& item : split_list(*p, ',')) {
      auto ends = split_list(item, ':');
      if (ends.size() != 2) throw InputError("pairs are written p:q, got '" + item + "'");
      pairs.emplace_back(c.pf.point(ends[0]), c.pf.point(ends[1]));
    }
  const std::string mode = c.get("mode").value_or("strong");
  FFReport r;
  if (mode == "strong") {
    r = check_strong_simplicity(k, pairs, *dim_x, local_options(c, std::nullopt));
  } else if (mode == "ortho") {
    Point w = c.pf.point(c.need("witness"));
    r = check_orthonormality(k, w, *dim_x, pairs, local_options(c, w));
  } else {
    throw InputError("--mode is strong or ortho");
  }
  std::ostringstream t;
  t << (mode == "strong" ? "strong simplicity" : "orthonormality") << " of kernel " << name << ": " << to_string(r.verdict) << "\n";
  for (const auto& cond : r.conditions) t << "  (" << cond.name << ") " << to_string(cond.verdict) << ": " << cond.evidence << "\n";
  for (const auto& tb : r.tables) {
    t << "  Hom^i(Phi Kos, Phi k) " << format_point(tb.x1) << " -> " << format_point(tb.x2) << " [" << tb.sop << "]:";
    for (const auto& [i, l] : tb.lengths)
      if (!l || *l) t << " " << i << ":" << dim_text(l);
    t << "\n";
  }
  t << "  " << r.disclaimer << "\n";
  Json j = to_json(r);
  j["kernel"] = name;
  return {j, t.str()};
}

int cmd_selftest(std::ostream& out, const std::string& json_path) {
  auto rows = run_selftest();
  std::ostringstream t;
  Json j = Json::array();
  int failed = 0;
  for (const auto& row : rows) {
    t << (row.passed ? "pass  " : "FAIL  ") << row.module << "  " << row.example << (row.detail.empty() ? "" : "  (" + row.detail + ")") << "\n";
    j.push_back({{"module", row.module}, {"example", row.example}, {"passed", row.passed}, {"detail", row.detail}});
    if (!row.passed) ++failed;
  }
  t << rows.size() - failed << "/" << rows.size() << " examples pass\n";
  Json report{{"schema", kReportSchema}, {"command", "selftest"}, {"result", {{"passed", rows.size() - failed}, {"total", rows.size()}, {"rows", j}}}};
  if (json_path == "-") {
    out << dump(report);
  } else {
    out << t.str();
    if (!json_path.empty()) {
      std::ofstream f(json_path, std::ios::binary);
      f << dump(report);
    }
  }
  return failed == 0 ? kComputed : kAlarm;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Koszul-complex tools for local algebra and integral functors", "koszulkit"};
  std::string command, file;
  std::map<std::string, std::string> flags;
  std::set<std::string> switches;
  app.add_option("command", command, "depth | tor-table | sop-check | sm | support-check | span-check | ff-check | selftest")->required();
  app.add_option("file", file, "problem file");
  const std::vector<std::pair<const char*, const char*>> valued{
      {"point", "point name or literal"},     {"sops", "comma separated sop names"},
      {"smax", "Hilbert-Samuel search bound"}, {"degrees", "lo:hi range for tor-table"},
      {"suggest", "number of sops to suggest"}, {"budget", "sop search budget"},
      {"m", "S_m index"},                     {"n", "ambient dimension for S_m"},
      {"grid", "integer grid radius"},        {"codim", "codimension of Y"},
      {"points", "comma separated points"},   {"pairs", "p:q pairs for ff-check"},
      {"witness", "witness point"},           {"mode", "strong or ortho"},
      {"dim_x", "dimension of X"},            {"json", "write the JSON report here ('-' for stdout)"},
      {"field", "q or fp:<p>"}};
  for (const auto& [name, help] : valued) app.add_option(std::string("--") + name, flags[name], help);
  bool single = false, witnesses = false;
  app.add_flag("--single-sop", single, "use one sop instead of two");
  app.add_flag("--witnesses", witnesses, "print spanning witnesses");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kComputed;
  } catch (const CLI::ParseError& e) {
    err << "koszulkit: " << e.what() << "\n";
    return kInputError;
  }
  if (single) switches.insert("single-sop");
  if (witnesses) switches.insert("witnesses");
  const std::string json_path = flags["json"];

  try {
    if (command == "selftest") return cmd_selftest(out, json_path);
    static const std::map<std::string, std::function<Outcome(const Context&)>> commands{
        {"depth", cmd_depth},   {"tor-table", cmd_tor_table},         {"sop-check", cmd_sop_check}, {"sm", cmd_sm},
        {"support-check", cmd_support_check}, {"span-check", cmd_span_check}, {"ff-check", cmd_ff_check}};
    auto it = commands.find(command);
    if (it == commands.end()) throw InputError("unknown command '" + command + "'");
    if (file.empty()) throw InputError("missing problem file");
    std::optional<Field> field;
    if (!flags["field"].empty()) field = Field::parse(flags["field"]);
    ProblemFile pf = load_problem(file, field);
    if (auto declared = pf.option("command"); declared && *declared != command)
      throw InputError("file declares command '" + *declared + "', not '" + command + "'");
    Context ctx{pf, flags, switches};
    Outcome o = it->second(ctx);
    Json report = envelope(command, pf.text, pf.field, std::move(o.result));
    report["alarm"] = o.alarm;
    if (json_path == "-") {
      out << dump(report);
    } else {
      out << o.text;
      if (!json_path.empty()) {
        std::ofstream f(json_path, std::ios::binary);
        if (!f) throw InputError("cannot write '" + json_path + "'");
        f << dump(report);
      }
    }
    return o.alarm ? kAlarm : kComputed;
  } catch (const ConsistencyError& e) {
    err << "koszulkit: falsification alarm: " << e.what() << "\n";
    return kAlarm;
  } catch (const InconclusiveError& e) {
    err << "koszulkit: inconclusive: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "koszulkit: input error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace koszulkit
