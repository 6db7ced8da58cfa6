// Random-forest Gini importance with content-keyed determinism.
//
// All randomness (bootstrap draws, per-node feature subsets) is keyed on
// the *content* of the dataset, not on row/column input order:
//   - rows get a canonical order (sorted by value-multiset, then label,
//     then raw values), so shuffling input rows changes nothing;
//   - feature subsets are chosen by hashing each column's bytes in
//     canonical row order, so permuting columns permutes the forest's
//     decisions — and the importance vector — identically.
// Identical duplicate columns fall back to input-index order; they carry
// identical content, so the attribution choice between them is arbitrary.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "vqclab/dataprep.hpp"
#include "vqclab/rng.hpp"

namespace vqclab {

namespace {

struct ForestView {
    const Mat& x;
    const std::vector<int>& y;
    std::vector<int> canon;      // canonical rank -> original row index
    std::vector<uint64_t> col_hash; // per original column, content hash
};

// Sort rows by (sorted value multiset, label, raw values): pure content,
// so the order survives any row shuffle; the multiset front makes the
// order insensitive to column permutations on distinct-valued data.
std::vector<int> canonical_rows(const Mat& x, const std::vector<int>& y) {
    const auto n = static_cast<size_t>(x.rows());
    std::vector<std::vector<double>> sorted_vals(n);
    for (size_t i = 0; i < n; ++i) {
        sorted_vals[i].assign(x.row(static_cast<Eigen::Index>(i)).begin(),
                              x.row(static_cast<Eigen::Index>(i)).end());
        std::sort(sorted_vals[i].begin(), sorted_vals[i].end());
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto ua = static_cast<size_t>(a);
        const auto ub = static_cast<size_t>(b);
        if (sorted_vals[ua] != sorted_vals[ub]) {
            return sorted_vals[ua] < sorted_vals[ub];
        }
        if (y[ua] != y[ub]) {
            return y[ua] < y[ub];
        }
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            if (x(a, j) != x(b, j)) {
                return x(a, j) < x(b, j);
            }
        }
        return false;
    });
    return order;
}

uint64_t column_hash(const Mat& x, const std::vector<int>& canon,
                     Eigen::Index col) {
    uint64_t h = 1469598103934665603ull; // FNV-1a, fed canonical-order bytes
    for (const int row : canon) {
        const double v = x(row, col);
        h = hash_double(h, v);
    }
    return h;
}

double gini(long c0, long c1) {
    const double n = static_cast<double>(c0 + c1);
    const double p0 = static_cast<double>(c0) / n;
    const double p1 = static_cast<double>(c1) / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

struct SplitChoice {
    bool found = false;
    int feature = -1; // original column index
    double threshold = 0.0;
    double decrease = 0.0; // impurity decrease, node-size weighted
    uint64_t feature_hash = 0;
};

// members: canonical ranks of the bootstrap samples in this node.
void grow_node(const ForestView& view, uint64_t tree_token, uint64_t node_id,
               int depth, std::vector<int>& members, long n_bootstrap,
               const RfParams& params, Vec& importance) {
    const auto n = static_cast<long>(members.size());
    long c1 = 0;
    for (const int rank : members) {
        c1 += view.y[static_cast<size_t>(
            view.canon[static_cast<size_t>(rank)])];
    }
    const long c0 = n - c1;
    if (depth >= params.max_depth || n < params.min_samples_split ||
        c0 == 0 || c1 == 0) {
        return;
    }

    const auto d = static_cast<int>(view.x.cols());
    int m = static_cast<int>(std::sqrt(static_cast<double>(d)));
    m = std::max(1, std::min(m, d));
    // Candidate features: the m smallest by a node-keyed content hash.
    const uint64_t node_key = mix_seed(tree_token, node_id);
    std::vector<int> cols(static_cast<size_t>(d));
    std::iota(cols.begin(), cols.end(), 0);
    std::sort(cols.begin(), cols.end(), [&](int a, int b) {
        const uint64_t ka = mix_seed(node_key, view.col_hash[a]);
        const uint64_t kb = mix_seed(node_key, view.col_hash[b]);
        if (ka != kb) return ka < kb;
        if (view.col_hash[a] != view.col_hash[b]) {
            return view.col_hash[a] < view.col_hash[b];
        }
        return a < b; // identical column content only
    });
    cols.resize(static_cast<size_t>(m));

    const double node_imp = gini(c0, c1);
    SplitChoice best;
    std::vector<std::pair<double, int>> vals; // (feature value, rank)
    for (const int f : cols) {
        vals.clear();
        vals.reserve(members.size());
        for (const int rank : members) {
            vals.emplace_back(
                view.x(view.canon[static_cast<size_t>(rank)], f), rank);
        }
        std::sort(vals.begin(), vals.end());
        long left1 = 0;
        for (long p = 0; p + 1 < n; ++p) {
            left1 += view.y[static_cast<size_t>(view.canon[static_cast<size_t>(
                vals[static_cast<size_t>(p)].second)])];
            if (vals[static_cast<size_t>(p)].first ==
                vals[static_cast<size_t>(p + 1)].first) {
                continue; // no boundary between equal values
            }
            const long nl = p + 1;
            const long nr = n - nl;
            const long l1 = left1, l0 = nl - left1;
            const long r1 = c1 - l1, r0 = c0 - l0;
            const double decrease =
                static_cast<double>(n) / static_cast<double>(n_bootstrap) *
                (node_imp -
                 (static_cast<double>(nl) / static_cast<double>(n)) *
                     gini(l0, l1) -
                 (static_cast<double>(nr) / static_cast<double>(n)) *
                     gini(r0, r1));
            if (decrease <= 0.0) {
                continue;
            }
            const double thr = (vals[static_cast<size_t>(p)].first +
                                vals[static_cast<size_t>(p + 1)].first) /
                               2.0;
            const bool better =
                !best.found || decrease > best.decrease ||
                (decrease == best.decrease &&
                 (view.col_hash[f] < best.feature_hash ||
                  (view.col_hash[f] == best.feature_hash &&
                   thr < best.threshold)));
            if (better) {
                best.found = true;
                best.feature = f;
                best.threshold = thr;
                best.decrease = decrease;
                best.feature_hash = view.col_hash[f];
            }
        }
    }
    if (!best.found) {
        return;
    }

    importance[best.feature] += best.decrease;
    std::vector<int> left, right;
    left.reserve(members.size());
    right.reserve(members.size());
    for (const int rank : members) {
        const double v =
            view.x(view.canon[static_cast<size_t>(rank)], best.feature);
        (v <= best.threshold ? left : right).push_back(rank);
    }
    members.clear();
    members.shrink_to_fit();
    grow_node(view, tree_token, 2 * node_id, depth + 1, left, n_bootstrap,
              params, importance);
    grow_node(view, tree_token, 2 * node_id + 1, depth + 1, right,
              n_bootstrap, params, importance);
}

} // namespace

Vec rf_importance(const Dataset& ds, const RfParams& params) {
    if (params.n_trees < 1 || params.max_depth < 1) {
        throw ConfigError("forest needs n_trees >= 1 and max_depth >= 1");
    }
    const long n = ds.size();
    const auto d = static_cast<int>(ds.dim());
    if (n < 2 || d < 1) {
        throw std::invalid_argument("forest needs >= 2 samples and >= 1 "
                                    "feature");
    }
    long ones = 0;
    for (const int y : ds.labels) {
        if (y != 0 && y != 1) {
            throw std::invalid_argument("labels must be 0 or 1");
        }
        ones += y;
    }
    if (ones == 0 || ones == n) {
        throw std::invalid_argument(
            "forest training needs both classes present");
    }

    ForestView view{ds.features, ds.labels, canonical_rows(ds.features,
                                                           ds.labels),
                    {}};
    view.col_hash.resize(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) {
        view.col_hash[static_cast<size_t>(j)] =
            column_hash(ds.features, view.canon, j);
    }

    Vec importance = Vec::Zero(d);
    const uint64_t forest_seed = derive_seed(params.seed, "rf-forest");
    for (int t = 0; t < params.n_trees; ++t) {
        const uint64_t tree_token =
            mix_seed(forest_seed, static_cast<uint64_t>(t));
        Rng rng(tree_token);
        std::vector<int> members; // bootstrap sample, as canonical ranks
        members.reserve(static_cast<size_t>(n));
        for (long i = 0; i < n; ++i) {
            members.push_back(
                static_cast<int>(rng.bounded(static_cast<uint64_t>(n))));
        }
        std::sort(members.begin(), members.end());
        grow_node(view, tree_token, 1, 0, members, n, params, importance);
    }
    const double total = importance.sum();
    if (total > 0.0) {
        importance /= total;
    }
    return importance;
}

} // namespace vqclab
