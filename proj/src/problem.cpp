#include "koszulkit/problem.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "koszulkit/errors.hpp"

namespace koszulkit {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

namespace {

struct Entry {
  int line;
  std::string key, value;
};

struct Section {
  int line;
  std::string kind, name;
  std::vector<Entry> entries;

  const Entry* find(const std::string& key) const {
    const Entry* hit = nullptr;
    for (const auto& e : entries)
      if (e.key == key) {
        if (hit) throw InputError("line " + std::to_string(e.line) + ": duplicate key '" + key + "'");
        hit = &e;
      }
    return hit;
  }
  std::string get(const std::string& key, const std::string& fallback = {}) const {
    const Entry* e = find(key);
    return e ? e->value : fallback;
  }
};

std::vector<Section> tokenize(std::string_view text) {
  std::vector<Section> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw InputError("line " + std::to_string(line) + ": unterminated section header");
      std::istringstream hs(s.substr(1, s.size() - 2));
      Section sec{line, {}, {}, {}};
      hs >> sec.kind >> sec.name;
      std::string extra;
      if (sec.kind.empty() || (hs >> extra)) throw InputError("line " + std::to_string(line) + ": bad section header '" + s + "'");
      out.push_back(std::move(sec));
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) throw InputError("line " + std::to_string(line) + ": expected key = value");
    if (out.empty()) throw InputError("line " + std::to_string(line) + ": entry outside a section");
    out.back().entries.push_back({line, trim(s.substr(0, eq)), trim(s.substr(eq + 1))});
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string& what) { throw InputError("line " + std::to_string(line) + ": " + what); }

// Runs f and prefixes any InputError with the line number.
template <class F>
auto at_line(int line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    fail(line, e.what());
  }
}

std::vector<std::string> names(const std::string& list) {
  std::vector<std::string> out;
  for (auto& s : split_list(list, ','))
    if (!s.empty()) out.push_back(s);
  return out;
}

Vector parse_vector(const Ring& ring, const std::string& text, std::size_t expected) {
  std::string body = trim(text);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') throw InputError("expected a vector [p1, ..., pn], got '" + body + "'");
  auto entries = split_list(std::string_view(body).substr(1, body.size() - 2), ',');
  if (entries.size() != expected)
    throw InputError("vector '" + body + "' has " + std::to_string(entries.size()) + " entries, expected " + std::to_string(expected));
  Vector v;
  for (std::size_t j = 0; j < entries.size(); ++j) v += Vector::unit(ring.field(), static_cast<std::uint32_t>(j)).times(parse_polynomial(ring, entries[j]));
  return v;
}

std::vector<Vector> parse_columns(const Ring& ring, const std::string& text, std::size_t rows) {
  std::vector<Vector> out;
  for (const auto& col : split_list(text, ';')) out.push_back(parse_vector(ring, col, rows));
  return out;
}

}  // namespace

std::optional<std::string> ProblemFile::option(const std::string& key) const {
  auto it = task.find(key);
  if (it == task.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

const FPModule& ProblemFile::module(const std::string& name) const {
  auto it = modules.find(name);
  if (it == modules.end()) throw InputError("unknown module '" + name + "'");
  return it->second;
}

BoundedComplex ProblemFile::complex(const std::string& name) const {
  if (auto it = complexes.find(name); it != complexes.end()) return it->second;
  if (auto it = modules.find(name); it != modules.end()) return BoundedComplex::concentrated(it->second, 0);
  throw InputError("unknown complex or module '" + name + "'");
}

Point ProblemFile::point(const std::string& ref) const {
  if (auto it = points.find(ref); it != points.end()) return it->second;
  if (!ref.empty() && (ref.front() == '(' || ref.front() == '-' || std::isdigit(static_cast<unsigned char>(ref.front())))) {
    Point p = parse_point(field, ref);
    if (static_cast<int>(p.size()) != point_algebra()->num_vars())
      throw InputError("point " + ref + " needs " + std::to_string(point_algebra()->num_vars()) + " coordinates");
    return p;
  }
  throw InputError("unknown point '" + ref + "'");
}

const SystemOfParameters& ProblemFile::sop(const std::string& name) const {
  auto it = sops.find(name);
  if (it == sops.end()) throw InputError("unknown sop '" + name + "'");
  return it->second;
}

std::vector<Polynomial> ProblemFile::polynomials(const std::string& text) const {
  std::vector<Polynomial> out;
  for (const auto& s : split_list(text, ','))
    if (!s.empty()) out.push_back(Polynomial::parse(point_algebra()->ring(), s));
  return out;
}

ProblemFile parse_problem(std::string_view text, std::optional<Field> field_override) {
  ProblemFile pf;
  pf.text = std::string(text);
  auto sections = tokenize(text);

  const Section* ring = nullptr;
  const Section* split = nullptr;
  std::set<std::string> seen;
  for (const auto& s : sections) {
    static const std::set<std::string> known{"ring", "split", "module", "complex", "points", "sops", "task"};
    if (!known.count(s.kind)) fail(s.line, "unknown section '" + s.kind + "'");
    const bool named = s.kind == "module" || s.kind == "complex";
    if (named == s.name.empty()) fail(s.line, named ? "section needs a name" : "section takes no name");
    if (!seen.insert(s.kind + " " + s.name).second) fail(s.line, "duplicate section");
    if (s.kind == "ring") ring = &s;
    if (s.kind == "split") split = &s;
  }
  if (!ring) throw InputError("missing [ring] section");

  pf.field = field_override ? *field_override : at_line(ring->line, [&] { return Field::parse(ring->get("field", "q")); });
  auto vars = names(ring->get("vars"));
  if (vars.empty()) fail(ring->line, "ring needs vars");
  auto r = at_line(ring->line, [&] { return make_ring(pf.field, vars); });
  const std::string ideal = ring->get("ideal");

  if (split) {
    if (!ideal.empty()) fail(ring->line, "with a [split], quotient ideals go into x_ideal / y_ideal");
    auto xs = names(split->get("x")), ys = names(split->get("y"));
    std::vector<std::string> joined = xs;
    joined.insert(joined.end(), ys.begin(), ys.end());
    if (joined != vars) fail(split->line, "split must list the ring variables in order, x-side first");
    pf.pair = at_line(split->line, [&] {
      auto ra = make_ring(pf.field, xs), rb = make_ring(pf.field, ys);
      return AffinePair(make_algebra(ra, Ideal::parse(ra, split->get("x_ideal"))), make_algebra(rb, Ideal::parse(rb, split->get("y_ideal"))));
    });
    pf.algebra = pf.pair->s();
  } else {
    pf.algebra = at_line(ring->line, [&] { return make_algebra(r, Ideal::parse(r, ideal)); });
  }
  const Ring& R = *pf.algebra->ring();

  for (const auto& s : sections) {
    if (s.kind == "module") {
      pf.modules.emplace(s.name, at_line(s.line, [&] {
        if (s.find("ideal")) {
          if (s.find("rank") || s.find("relations")) throw InputError("module takes either ideal or rank/relations");
          return FPModule::cyclic(pf.algebra, Ideal::parse(pf.algebra->ring(), s.get("ideal")));
        }
        const Entry* rk = s.find("rank");
        if (!rk) throw InputError("module needs ideal or rank");
        std::size_t rank = 0;
        std::istringstream rs(rk->value);
        std::string extra;
        if (!(rs >> rank) || (rs >> extra)) throw InputError("bad rank '" + rk->value + "'");
        std::vector<Vector> rels;
        if (const Entry* e = s.find("relations"); e && !e->value.empty()) rels = parse_columns(R, e->value, rank);
        return FPModule(pf.algebra, rank, std::move(rels));
      }));
    }
  }

  for (const auto& s : sections) {
    if (s.kind != "complex") continue;
    if (pf.modules.count(s.name)) fail(s.line, "name '" + s.name + "' is already a module");
    std::map<int, FPModule> terms;
    std::map<int, std::pair<int, std::string>> diffs;
    for (const auto& e : s.entries) {
      std::istringstream ks(e.key);
      std::string word;
      int q = 0;
      std::string extra;
      if (!(ks >> word >> q) || (ks >> extra) || (word != "term" && word != "d")) fail(e.line, "expected 'term <q>' or 'd <q>', got '" + e.key + "'");
      if (word == "term") {
        std::istringstream vs(e.value);
        std::string head;
        vs >> head;
        FPModule m;
        if (head == "free") {
          std::size_t rank = 0;
          if (!(vs >> rank)) fail(e.line, "expected 'free <rank>'");
          m = FPModule::free(pf.algebra, rank);
        } else {
          auto it = pf.modules.find(e.value);
          if (it == pf.modules.end()) fail(e.line, "unknown module '" + e.value + "'");
          m = it->second;
        }
        if (!terms.emplace(q, std::move(m)).second) fail(e.line, "term " + std::to_string(q) + " given twice");
      } else if (!diffs.emplace(q, std::make_pair(e.line, e.value)).second) {
        fail(e.line, "d " + std::to_string(q) + " given twice");
      }
    }
    std::map<int, std::vector<Vector>> cols;
    for (const auto& [q, lv] : diffs) {
      auto src = terms.find(q), dst = terms.find(q + 1);
      if (src == terms.end() || dst == terms.end()) fail(lv.first, "d " + std::to_string(q) + " needs terms " + std::to_string(q) + " and " + std::to_string(q + 1));
      auto c = at_line(lv.first, [&] { return parse_columns(R, lv.second, dst->second.generators()); });
      if (c.size() != src->second.generators())
        fail(lv.first, "d " + std::to_string(q) + " has " + std::to_string(c.size()) + " columns, term " + std::to_string(q) + " has " +
                           std::to_string(src->second.generators()) + " generators");
      cols.emplace(q, std::move(c));
    }
    pf.complexes.emplace(s.name, at_line(s.line, [&] { return BoundedComplex(pf.algebra, terms, cols); }));
  }

  for (const auto& s : sections) {
    if (s.kind == "points")
      for (const auto& e : s.entries) {
        auto p = at_line(e.line, [&] { return parse_point(pf.field, e.value); });
        if (static_cast<int>(p.size()) != pf.point_algebra()->num_vars()) fail(e.line, "point has the wrong number of coordinates");
        if (!on_subvariety(pf.point_algebra()->ideal(), p)) fail(e.line, "point " + format_point(p) + " is not on the variety");
        if (!pf.points.emplace(e.key, std::move(p)).second) fail(e.line, "duplicate point '" + e.key + "'");
      }
  }
  for (const auto& s : sections) {
    if (s.kind == "sops")
      for (const auto& e : s.entries) {
        auto at = e.value.rfind('@');
        if (at == std::string::npos) fail(e.line, "sop needs '@ <point>'");
        auto sop = at_line(e.line, [&] { return validate_sop(pf.point_algebra(), pf.point(trim(e.value.substr(at + 1))), pf.polynomials(e.value.substr(0, at))); });
        if (!pf.sops.emplace(e.key, std::move(sop)).second) fail(e.line, "duplicate sop '" + e.key + "'");
      }
    if (s.kind == "task")
      for (const auto& e : s.entries)
        if (!pf.task.emplace(e.key, e.value).second) fail(e.line, "duplicate task key '" + e.key + "'");
  }
  return pf;
}

ProblemFile load_problem(const std::string& path, std::optional<Field> field_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), field_override);
}

}  // namespace koszulkit
