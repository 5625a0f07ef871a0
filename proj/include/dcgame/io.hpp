#pragma once

#include <string>

#include "json.hpp"

#include "dcgame/channels.hpp"
#include "dcgame/cone.hpp"
#include "dcgame/games.hpp"
#include "dcgame/source_games.hpp"

namespace dcgame {

using json = nlohmann::json;

/// {"alphabet":[...], "cells":[{"normals":[[w...],...]},...]}; empty cell
/// list is the empty cone, an empty normal list is the full cell. Cells and
/// normals are emitted in lexicographic order so equal inputs serialize
/// byte-identically.
json cone_to_json(const DCCone& a);
DCCone cone_from_json(const json& j);

/// Channels serialize in explicit form; parsing also accepts the parametric
/// kinds (dmc, dmc_feedback, adversarial, adversarial_feedback, avcf, bsc,
/// erasure).
json channel_to_json(const GameChannel& w);
GameChannel channel_from_json(const json& j);

json strategy_to_json(const TeamStrategy& st);
TeamStrategy strategy_from_json(const json& j);

json gamespec_to_json(const GameSpec& spec);
GameSpec gamespec_from_json(const json& j);

json scheme_to_json(const CodingScheme& scheme);
CodingScheme scheme_from_json(const json& j);

json source_strategy_to_json(const SourceStrategy& st);
SourceStrategy source_strategy_from_json(const json& j);

json verify_report_to_json(const VerifyReport& rep);

}  // namespace dcgame
