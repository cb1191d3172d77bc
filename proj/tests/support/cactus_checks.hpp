#pragma once

#include <string>
#include <vector>

#include "trailorient/connectivity.hpp"

namespace oracle {

// First violated cactus property, empty if none: members partition the
// vertices, every critical edge sits on exactly one cycle, m <= 2(n - 1),
// contracting the node classes gives the cactus, and cycle edge i joins
// cycle nodes i and i + 1.
std::string cactus_shape_problem(const trailorient::MultiGraph& g, const trailorient::Cactus& c);

// Same partition up to renaming of class ids.
bool same_partition(const std::vector<trailorient::NodeId>& a, const std::vector<int>& b);

}  // namespace oracle
