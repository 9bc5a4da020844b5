#pragma once

#include <string>

#include "unialign/pnml.hpp"

namespace testutil {

inline std::string fixture(const std::string& name) { return std::string(UNIALIGN_FIXTURE_DIR) + "/" + name; }

inline unialign::PetriNet load_net(const std::string& name) { return unialign::read_pnml_file(fixture(name)); }

}  // namespace testutil
