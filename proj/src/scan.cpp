#include "cpwx/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "cpwx/errors.hpp"

namespace cpwx {

namespace {

// Doubled values must satisfy |2W| <= k(n-k) <= n^2/4; keep that inside
// int64 with room to spare.
constexpr std::size_t kMaxScanLength = std::size_t{1} << 31;

void check_scan_input(std::span<const double> x) {
    validate_series(x, 2);
    if (x.size() > kMaxScanLength) {
        throw ValidationError("series too long for exact doubled-integer scan");
    }
}

// Fenwick tree over compressed value ranks, counting inserted elements.
class RankCounter {
public:
    explicit RankCounter(std::size_t size) : tree_(size + 1, 0) {}

    void insert(std::size_t rank) { // 1-based rank
        for (std::size_t i = rank; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
    }

    std::int64_t count_up_to(std::size_t rank) const { // #inserted with rank' <= rank
        std::int64_t s = 0;
        for (std::size_t i = rank; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

private:
    std::vector<std::int64_t> tree_;
};

std::vector<std::size_t> compress_ranks(std::span<const double> x) {
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> ranks(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        ranks[i] = static_cast<std::size_t>(
                       std::lower_bound(sorted.begin(), sorted.end(), x[i]) - sorted.begin()) +
                   1;
    }
    return ranks;
}

ScanProfile profile_from_counts(std::span<const double> x,
                                const std::vector<std::int64_t>& cross_pairs) {
    const auto n = static_cast<std::int64_t>(x.size());
    ScanProfile p;
    p.method = Method::wilcoxon;
    p.n = x.size();
    p.wilcoxon_doubled.resize(x.size() - 1);
    for (std::int64_t k = 1; k < n; ++k) {
        p.wilcoxon_doubled[static_cast<std::size_t>(k - 1)] = 2 * cross_pairs[static_cast<std::size_t>(k - 1)] - k * (n - k);
    }
    return p;
}

} // namespace

ScanProfile wilcoxon_scan(std::span<const double> x) {
    check_scan_input(x);
    const std::size_t n = x.size();
    const auto ranks = compress_ranks(x);
    const std::size_t m = *std::max_element(ranks.begin(), ranks.end());

    // before[p] = #{i < p : x_i <= x_p}, after[p] = #{j > p : x_j >= x_p}
    std::vector<std::int64_t> before(n), after(n);
    {
        RankCounter left(m);
        for (std::size_t p = 0; p < n; ++p) {
            before[p] = left.count_up_to(ranks[p]);
            left.insert(ranks[p]);
        }
        RankCounter right(m);
        std::int64_t inserted = 0;
        for (std::size_t p = n; p-- > 0;) {
            after[p] = inserted - right.count_up_to(ranks[p] - 1);
            right.insert(ranks[p]);
            ++inserted;
        }
    }

    // Moving split k-1 -> k transfers x_k into the left block: it stops
    // pairing as a right element (losing before[k]) and starts pairing as a
    // left element (gaining after[k]).
    std::vector<std::int64_t> cross(n - 1);
    std::int64_t acc = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        acc += after[k] - before[k];
        cross[k] = acc;
    }
    return profile_from_counts(x, cross);
}

ScanProfile wilcoxon_scan_quadratic(std::span<const double> x) {
    check_scan_input(x);
    const std::size_t n = x.size();
    std::vector<std::int64_t> cross(n - 1);
    std::int64_t acc = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double moved = x[k];
        std::int64_t gained = 0, lost = 0;
        for (std::size_t j = k + 1; j < n; ++j) {
            if (moved <= x[j]) ++gained;
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (x[i] <= moved) ++lost;
        }
        acc += gained - lost;
        cross[k] = acc;
    }
    return profile_from_counts(x, cross);
}

ScanProfile wilcoxon_scan_naive(std::span<const double> x) {
    check_scan_input(x);
    const std::size_t n = x.size();
    std::vector<std::int64_t> cross(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        std::int64_t cnt = 0;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = k; j < n; ++j) {
                if (x[i] <= x[j]) ++cnt;
            }
        }
        cross[k - 1] = cnt;
    }
    return profile_from_counts(x, cross);
}

ScanProfile cusum_scan(std::span<const double> x) {
    check_scan_input(x);
    const std::size_t n = x.size();

    // Neumaier-compensated prefix sums, realized value by value in input order.
    std::vector<double> prefix(n);
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = sum + x[i];
        if (std::fabs(sum) >= std::fabs(x[i])) {
            comp += (sum - t) + x[i];
        } else {
            comp += (x[i] - t) + sum;
        }
        sum = t;
        prefix[i] = sum + comp;
    }

    ScanProfile p;
    p.method = Method::cusum;
    p.n = n;
    p.cusum_values.resize(n - 1);
    const double nn = static_cast<double>(n);
    const double total = prefix[n - 1];
    for (std::size_t k = 1; k < n; ++k) {
        p.cusum_values[k - 1] = (nn * prefix[k - 1] - static_cast<double>(k) * total) / nn;
    }
    return p;
}

std::size_t argmax_first_abs(std::span<const std::int64_t> values) {
    if (values.empty()) throw ValidationError("argmax over empty profile");
    std::size_t best = 0;
    std::int64_t best_abs = std::llabs(values[0]);
    for (std::size_t i = 1; i < values.size(); ++i) {
        const std::int64_t a = std::llabs(values[i]);
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    return best + 1;
}

std::size_t argmax_first_abs(std::span<const double> values) {
    if (values.empty()) throw ValidationError("argmax over empty profile");
    std::size_t best = 0;
    double best_abs = std::fabs(values[0]);
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double a = std::fabs(values[i]);
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    return best + 1;
}

EstimateResult estimate_changepoint(std::span<const double> x, Method method) {
    EstimateResult r;
    r.method = method;
    if (method == Method::wilcoxon) {
        const ScanProfile p = wilcoxon_scan(x);
        r.k_hat = argmax_first_abs(std::span<const std::int64_t>(p.wilcoxon_doubled));
        r.max_abs_value =
            static_cast<double>(std::llabs(p.wilcoxon_doubled[r.k_hat - 1])) / 2.0;
    } else {
        const ScanProfile p = cusum_scan(x);
        r.k_hat = argmax_first_abs(std::span<const double>(p.cusum_values));
        r.max_abs_value = std::fabs(p.cusum_values[r.k_hat - 1]);
    }
    r.theta_hat = static_cast<double>(r.k_hat) / static_cast<double>(x.size());
    return r;
}

} // namespace cpwx
