#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "koszulkit/integral.hpp"

namespace koszulkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "koszulkit-report/1";

std::string sha256_hex(std::string_view data);
std::string field_name(const Field& f);

Json to_json(const Point& p);
Json to_json(const std::optional<long>& length);  // "inf" when infinite
Json to_json(const KoszulTable& t);
Json to_json(const SopEvidence& e);
Json to_json(const DepthReport& r);
Json to_json(const SmVerdict& v);
Json to_json(const TorProfile& p);
Json to_json(const PointCheck& c);
Json to_json(const SupportConclusion& c);
Json to_json(const SupportReport& r);
Json to_json(const SpanReport& r);
Json to_json(const HomTable& t);
Json to_json(const FFReport& r);

/// {schema, command, input_sha256, field, result}
Json envelope(const std::string& command, std::string_view input, const Field& field, Json result);
/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace koszulkit
