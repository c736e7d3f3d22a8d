#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "wlh/construction.hpp"
#include "wlh/klein.hpp"
#include "wlh/wldim.hpp"

namespace wlh::io {

using json = nlohmann::ordered_json;

/// Instance file: parameters, the symbolic connection set, the explicit one when built, and the
/// fusion projection summary.
json instance_to_json(const construction::HardInstance& inst);
/// Parameters stored in an instance file; ParseError on a malformed document, BadParams on invalid values.
construction::InstanceParams params_from_json(const json& j);
/// First stored field that differs from the rebuilt instance, or nothing when they agree.
std::optional<std::string> compare_instance(const construction::HardInstance& inst, const json& stored);

json to_json(const klein::Graph& g);
json to_json(const klein::KleinReport& r);
json to_json(const klein::Diagnostics& d);
json to_json(const construction::FusionCertificate& c);
json to_json(const construction::WlIdentityCertificate& c);
json to_json(const construction::NoIsoCertificate& c);
json to_json(const construction::LocalSystemCertificate& c);
json to_json(const construction::SizeAudit& a);
json to_json(const construction::OuterReport& r);
json to_json(const wldim::TupleColoring& c);
json to_json(const wldim::EquivalenceResult& r);
json to_json(const wldim::GameResult& r);
json to_json(const wldim::DuplicatorReport& r);

/// Reads a whole file; ErrorKind::MalformedInput with the path when it cannot be opened.
std::string read_file(const std::string& path);
/// ParseError with the parser message.
json parse_json(const std::string& text);

}  // namespace wlh::io
