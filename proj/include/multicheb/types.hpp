#pragma once

#include <cstddef>
#include <vector>

namespace multicheb {

using Point = std::vector<double>;
using IndexSet = std::vector<std::size_t>;  // sorted, unique

enum class Arithmetic { Float, Exact };

}  // namespace multicheb
