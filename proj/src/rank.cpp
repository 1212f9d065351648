#include "lquot/rank.hpp"

#include <map>

namespace lquot {

namespace {

// Fraction-free Bareiss elimination over Z; returns the rank.
long bareiss_rank(std::vector<std::vector<mpz_class>>& a) {
    if (a.empty())
        return 0;
    const size_t rows = a.size(), cols = a[0].size();
    mpz_class prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && a[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != r)
            std::swap(a[piv], a[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j) {
                mpz_class num = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(),
                             prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return static_cast<long>(r);
}

} // namespace

long exact_rank(const std::vector<ConstExpr>& exprs) {
    std::map<ConstSymbol, size_t> index;
    for (const ConstExpr& e : exprs)
        for (const auto& [sym, coef] : e.terms())
            index.emplace(sym, 0);
    size_t k = 0;
    for (auto& [sym, pos] : index)
        pos = k++;
    if (k == 0)
        return 0;

    std::vector<std::vector<mpz_class>> a;
    a.reserve(exprs.size());
    for (const ConstExpr& e : exprs) {
        std::vector<mpq_class> row(k, mpq_class(0));
        mpz_class lcm = 1;
        for (const auto& [sym, coef] : e.terms()) {
            row[index.at(sym)] = coef;
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                    coef.get_den().get_mpz_t());
        }
        std::vector<mpz_class> zrow(k);
        for (size_t j = 0; j < k; ++j) {
            mpq_class scaled = row[j] * mpq_class(lcm);
            scaled.canonicalize();
            zrow[j] = scaled.get_num();
        }
        a.push_back(std::move(zrow));
    }
    return bareiss_rank(a);
}

long rank_lower_bound(const std::vector<ConstExpr>& vs, const ConstExpr& w,
                      const std::vector<mpq_class>& rs) {
    if (vs.empty())
        throw DomainError("rank bound wants at least one vector");
    if (rs.size() != vs.size())
        throw DomainError("rank bound wants one ratio per vector");
    std::vector<ConstExpr> diffs;
    diffs.reserve(vs.size());
    for (size_t i = 0; i < vs.size(); ++i)
        diffs.push_back(vs[i] - w * rs[i]);
    return exact_rank(diffs);
}

} // namespace lquot
