#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ac/grid.hpp"

namespace ac {

// Profiles travel as two-column CSV with header "r,u" and 17 significant
// digits, so a round trip is bit-exact.
void write_profile_csv(const std::string& path, const Grid& g, const Profile& u);
std::pair<std::vector<double>, Profile> read_profile_csv(const std::string& path);

}  // namespace ac
