#pragma once

#include <vector>

#include "lquot/symbols.hpp"

namespace lquot {

// Exact rank of the span of the given expressions over Q, treating each
// distinct symbol as an independent basis vector.
long exact_rank(const std::vector<ConstExpr>& exprs);

// Exact rank of the family { v_i - r_i * w }.  Requires rs.size() ==
// vs.size() and at least one vector.
long rank_lower_bound(const std::vector<ConstExpr>& vs, const ConstExpr& w,
                      const std::vector<mpq_class>& rs);

} // namespace lquot
