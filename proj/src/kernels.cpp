#include "tatecalc/kernels.hpp"

#include <algorithm>
#include <iterator>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tatecalc::kernels {

std::map<int, GradedPolynomial> convolve_serial(const LaurentSeries& a,
                                                const LaurentSeries& b,
                                                int out_order)
{
    std::map<int, GradedPolynomial> out;
    for (const auto& [i, ca] : a.support()) {
        if (i + b.valuation() > out_order) {
            break;
        }
        for (const auto& [j, cb] : b.support()) {
            const int n = i + j;
            if (n > out_order) {
                break;
            }
            GradedPolynomial prod = poly_mul(ca, cb);
            if (prod.is_zero()) {
                continue;
            }
            auto it = out.find(n);
            if (it == out.end()) {
                out.emplace(n, std::move(prod));
            } else {
                it->second = poly_add(it->second, prod);
            }
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return out;
}

std::map<int, GradedPolynomial> convolve_parallel(const LaurentSeries& a,
                                                  const LaurentSeries& b,
                                                  int out_order)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    const int lo = a.valuation() + b.valuation();
    // Only exponents both operands can actually reach need a slot.
    const int hi = std::min(
        out_order, a.support().rbegin()->first + b.support().rbegin()->first);
    if (lo > hi) {
        return {};
    }
    const int count = hi - lo + 1;

    // Stage both operands densely so each output exponent reads them
    // without locking.
    const int av = a.valuation();
    const int bv = b.valuation();
    std::vector<const GradedPolynomial*> da(
        static_cast<std::size_t>(a.support().rbegin()->first - av + 1), nullptr);
    for (const auto& [i, c] : a.support()) {
        da[static_cast<std::size_t>(i - av)] = &c;
    }
    std::vector<const GradedPolynomial*> db(
        static_cast<std::size_t>(b.support().rbegin()->first - bv + 1), nullptr);
    for (const auto& [j, c] : b.support()) {
        db[static_cast<std::size_t>(j - bv)] = &c;
    }

    const RingPtr ring = richer_ring(a.ring(), b.ring());
    const int out_degree = a.degree() + b.degree();
    std::vector<GradedPolynomial> slots(static_cast<std::size_t>(count),
                                        GradedPolynomial(ring, 0));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));

#pragma omp parallel for schedule(dynamic, 8)
    for (int k = 0; k < count; ++k) {
        try {
            const int n = lo + k;
            GradedPolynomial acc = GradedPolynomial::zero(ring, out_degree + n);
            for (std::size_t ia = 0; ia < da.size(); ++ia) {
                if (da[ia] == nullptr) {
                    continue;
                }
                const int j = n - (av + static_cast<int>(ia));
                if (j < bv) {
                    break;
                }
                const std::size_t ib = static_cast<std::size_t>(j - bv);
                if (ib >= db.size() || db[ib] == nullptr) {
                    continue;
                }
                acc = poly_add(acc, poly_mul(*da[ia], *db[ib]));
            }
            slots[static_cast<std::size_t>(k)] = std::move(acc);
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    std::map<int, GradedPolynomial> out;
    for (int k = 0; k < count; ++k) {
        auto& poly = slots[static_cast<std::size_t>(k)];
        if (!poly.is_zero()) {
            out.emplace(lo + k, std::move(poly));
        }
    }
    return out;
}

std::size_t convolution_cost(const LaurentSeries& a, const LaurentSeries& b)
{
    return a.support().size() * b.support().size();
}

} // namespace tatecalc::kernels
