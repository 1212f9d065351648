#pragma once

#include <set>

#include "lquot/symbols.hpp"

namespace lquot {

// Finite set of integers >= 1 (conductor/level index sets).
struct IntegerSet {
    std::set<long> elems;

    explicit IntegerSet(std::set<long> e) : elems(std::move(e)) {
        if (elems.empty())
            throw DomainError("integer set must be non-empty");
        for (long n : elems)
            if (n < 0)
                throw DomainError("integer set elements must be >= 1");
    }
};

// True iff every member owns a prime divisor dividing no other member.
bool property_a_check(const IntegerSet& s);

// Distinct prime factorization n = prod p^e, n >= 1.
std::vector<std::pair<long, int>> factorize(long n);

// log n as an exact combination of log p symbols; log 1 = 0.
ConstExpr log_n_expand(long n);

// Exact canonical form of psi^(m) at any rational argument off the poles:
// recurrence into (0,1], half-shift/duplication elimination of even
// denominators congruent to 2 mod 4, zeta rewriting at 1, the pi shift at
// 3/4, and the digamma pair rewrite above 1/2.
ConstExpr canonical_psi(long m, const mpq_class& x);

// canonical_psi at a/q + shift with 0 < a < q reduced and shift >= 0.
ConstExpr reduce_polygamma(long m, long a, long q, long shift);

// sum_{j=1}^{k-1} 1/(j - a/q), exact.
mpq_class r_rational(long k, long a, long q);

// psi^(2m)(k/2) as canonical symbol at beta/4 plus an exact rational,
// requiring 2k == beta (mod 4).
ConstExpr psik2_expand(long m, const mpq_class& k, long beta);

} // namespace lquot
