#include "koszulkit/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "koszulkit/errors.hpp"

namespace koszulkit {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) throw std::runtime_error("SHA-256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string field_name(const Field& f) { return f.characteristic() == 0 ? "q" : "fp:" + std::to_string(f.characteristic()); }

Json to_json(const Point& p) { return format_point(p); }

Json to_json(const std::optional<long>& length) { return length ? Json(*length) : Json("inf"); }

namespace {

Json index_map(const std::map<int, long>& m) {
  Json j = Json::object();
  for (const auto& [i, l] : m) j[std::to_string(i)] = l;
  return j;
}

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const KoszulTable& t) { return {{"tor", index_map(t.tor)}, {"ext", index_map(t.ext)}}; }

Json to_json(const SopEvidence& e) {
  return {{"f", e.sop.to_string()},
          {"first_nonzero_ext", optional_int(e.first_nonzero_ext)},
          {"tor_lengths", index_map(e.table.tor)},
          {"ext_lengths", index_map(e.table.ext)}};
}

Json to_json(const DepthReport& r) {
  Json sops = Json::array();
  for (const auto& e : r.sops) sops.push_back(to_json(e));
  return {{"point", to_json(r.point)},
          {"module", r.module},
          {"local_dim", r.local_dim},
          {"depth", r.depth ? Json(*r.depth) : Json("inf")},
          {"codepth", optional_int(r.codepth())},
          {"sops", sops}};
}

Json to_json(const SmVerdict& v) {
  Json top = Json::array();
  for (const auto& t : v.top_tor) top.push_back(optional_int(t));
  return {{"point", to_json(v.report.point)}, {"m", v.m}, {"n", v.n}, {"member", v.member},
          {"codepth", optional_int(v.report.codepth())}, {"top_tor", top}};
}

Json to_json(const TorProfile& p) {
  Json sops = Json::array();
  for (const auto& e : p.sops) sops.push_back(to_json(e));
  return {{"holds", p.holds}, {"c", p.c}, {"reason", p.reason}, {"sops", sops}};
}

Json to_json(const PointCheck& c) {
  Json tried = Json::array();
  for (const auto& e : c.tried) tried.push_back(to_json(e));
  return {{"point", to_json(c.point)},
          {"on_y", c.on_y},
          {"local_dim", c.local_dim},
          {"verdict", to_string(c.verdict)},
          {"witness", c.witness ? Json(*c.witness) : Json(nullptr)},
          {"note", c.note},
          {"tried", tried}};
}

Json to_json(const SupportConclusion& c) {
  return {{"nonzero_degrees", c.nonzero_degrees}, {"zero_object", c.zero_object},   {"is_sheaf", c.is_sheaf},
          {"support_in_y", c.support_in_y},       {"support_equals_y", c.support_equals_y}, {"verdict", to_string(c.verdict())}};
}

Json to_json(const SupportReport& r) {
  Json points = Json::array();
  for (const auto& p : r.points) points.push_back(to_json(p));
  return {{"support", r.j.to_string()},
          {"codim", r.codim},
          {"hypotheses", to_string(r.hypotheses)},
          {"conclusion", to_json(r.conclusion)},
          {"alarm", r.alarm()},
          {"assumption", kIrreducibilityAssumption},
          {"points", points}};
}

Json to_json(const SpanReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"point", to_json(w.point)}, {"sop", w.sop.to_string()}, {"l", w.l}, {"index", w.index}, {"length", w.length}});
  Json probe = Json::array();
  for (const auto& [p, nz] : r.kos_probe) probe.push_back({{"point", to_json(p)}, {"nonzero", nz}});
  return {{"nonzero_degrees", r.nonzero_degrees}, {"q0", optional_int(r.q0)}, {"verdict", to_string(r.verdict)},
          {"note", r.note},                       {"witnesses", witnesses},    {"kos_probe", probe}};
}

Json to_json(const HomTable& t) {
  Json lengths = Json::object();
  for (const auto& [i, l] : t.lengths) lengths[std::to_string(i)] = to_json(l);
  return {{"x1", to_json(t.x1)},         {"x2", to_json(t.x2)}, {"sop", t.sop}, {"exhaustive", t.exhaustive},
          {"vanishing_ok", t.vanishing_ok}, {"hom_dims", lengths}};
}

Json to_json(const FFReport& r) {
  Json conditions = Json::array();
  for (const auto& c : r.conditions) conditions.push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"evidence", c.evidence}});
  Json tables = Json::array();
  for (const auto& t : r.tables) tables.push_back(to_json(t));
  Json endo = Json::array();
  for (const auto& [x, l] : r.endomorphisms) endo.push_back({{"point", to_json(x)}, {"dim", to_json(l)}});
  Json items = Json::array();
  for (const auto& it : r.items)
    items.push_back({{"sop", it.sop},
                     {"colength", it.colength},
                     {"kos_to_point", to_json(it.kos_to_point)},
                     {"quotient_to_point", to_json(it.quotient_to_point)},
                     {"kos_to_quotient", to_json(it.kos_to_quotient)},
                     {"quotient_to_quotient", to_json(it.quotient_to_quotient)}});
  Json j = {{"mode", r.mode},
            {"verdict", to_string(r.verdict)},
            {"dim_x", r.dim_x},
            {"amplitude", r.amplitude},
            {"window", {r.window.first, r.window.second}},
            {"conditions", conditions},
            {"tables", tables},
            {"endomorphisms", endo}};
  if (r.witness) {
    j["witness"] = to_json(*r.witness);
    j["structure_to_point"] = to_json(r.structure_to_point);
    j["items"] = items;
  }
  j["disclaimer"] = r.disclaimer;
  return j;
}

Json envelope(const std::string& command, std::string_view input, const Field& field, Json result) {
  return {{"schema", kReportSchema}, {"command", command}, {"input_sha256", sha256_hex(input)}, {"field", field_name(field)}, {"result", std::move(result)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace koszulkit
