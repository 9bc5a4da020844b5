#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "unialign/petri_net.hpp"

namespace unialign {

/// Reads a place/transition net in PNML.
///
/// Supported subset: a single net whose places, transitions and arcs sit
/// directly under <net> or under its <page> elements. Place/transition ids
/// come from the `id` attribute; labels from <name><text>. A transition is
/// silent when its name is missing or empty, or when it carries
/// <toolspecific activity="$invisible$">. Arc weights come from
/// <inscription><text>. The final marking is read from
/// <finalmarkings><marking><place idref=".."><text>n</text></place>; when
/// absent, one token is put in every sink place (a place with incoming but
/// no outgoing arcs).
///
/// Throws ParseError for malformed XML and SemanticError for unknown arc
/// endpoints, a net without initial tokens, or an underivable final marking.
/// Ignored elements are reported in `warnings` when it is non-null.
PetriNet parse_pnml(std::string_view document, std::vector<std::string>* warnings = nullptr);

PetriNet read_pnml_file(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

/// Serializes `net` in the subset read by parse_pnml. When `transition_notes`
/// is given (one entry per transition) each transition gets a
/// <toolspecific tool="unialign" note=".."/> annotation.
std::string write_pnml(const PetriNet& net, std::string_view net_id = "net",
                       const std::vector<std::string>* transition_notes = nullptr);

/// Structural equality of the data model (ids, labels, arcs, markings).
bool same_net(const PetriNet& a, const PetriNet& b);

}  // namespace unialign
