#include "grauth/resilience.hpp"

#include <sstream>

namespace grauth {

Elem ResilientMap::eval(const Ring& b, const std::vector<Elem>& x, i64 x_index) const {
    if (kind == Kind::Linear) {
        if (coeffs.size() != x.size())
            throw std::invalid_argument("linear map arity mismatch");
        Elem acc = b.zero();
        for (size_t j = 0; j < x.size(); ++j)
            acc = b.add(acc, b.mul(coeffs[j], x[j]));
        return acc;
    }
    auto it = table.find(x_index);
    if (it == table.end())
        throw std::invalid_argument("table map has no entry for input");
    return it->second;
}

ResilienceReport check_resilient(const Ring& b, int n, const ResilientMap& f,
                                 int t, i64 cap) {
    ResilienceReport rep;
    rep.t = t;
    i64 bs = b.size();
    i64 total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > cap / bs) {
            rep.failure = "enumeration cap exceeded";
            return rep;
        }
        total *= bs;
    }

    // decode/encode of vector indices, x_0 most significant
    auto decode = [&](i64 idx) {
        std::vector<Elem> x(n);
        for (int j = n - 1; j >= 0; --j) {
            x[j] = b.element(idx % bs);
            idx /= bs;
        }
        return x;
    };

    // precompute all values once
    std::vector<i64> value(total);
    {
        for (i64 idx = 0; idx < total; ++idx)
            value[idx] = b.index_of(f.eval(b, decode(idx), idx));
    }

    // iterate subsets J of {0..n-1} with |J| <= t and |J| < n
    for (i64 mask = 0; mask < (i64(1) << n); ++mask) {
        int bits = __builtin_popcountll(mask);
        if (bits > t || bits >= n) continue;

        i64 fix_count = 1;
        for (int i = 0; i < bits; ++i) fix_count *= bs;
        i64 bucket_size = total / (fix_count * bs); // free inputs per value, if balanced
        (void)bucket_size;

        // histogram per fixing: key = fixed coordinate tuple
        std::vector<std::vector<i64>> hist(fix_count, std::vector<i64>(bs, 0));
        for (i64 idx = 0; idx < total; ++idx) {
            i64 key = 0;
            i64 rest = idx;
            // coordinates from most significant (j = 0) down
            for (int j = n - 1; j >= 0; --j) {
                i64 cj = rest % bs;
                rest /= bs;
                if (mask & (i64(1) << j)) key = key * bs + cj;
            }
            hist[key][value[idx]] += 1;
        }
        i64 expected = (total / fix_count) / bs;
        for (i64 key = 0; key < fix_count; ++key) {
            for (i64 v = 0; v < bs; ++v) {
                if (hist[key][v] != expected) {
                    std::ostringstream os;
                    os << "unbalanced restriction: subset mask " << mask
                       << " fixing " << key << " value " << v << " count "
                       << hist[key][v] << " expected " << expected;
                    rep.failure = os.str();
                    rep.fixings_checked += key + 1;
                    return rep;
                }
            }
        }
        rep.fixings_checked += fix_count;
    }
    rep.ok = true;
    return rep;
}

} // namespace grauth
