#include "l2curve/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace l2c {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
    FiniteGroup g;
    g.order_ = static_cast<int>(table.size());
    if (g.order_ == 0) throw InputError("empty group table");
    for (const auto& row : table)
        if (static_cast<int>(row.size()) != g.order_) throw InputError("group table is not square");
    g.table_ = std::move(table);
    g.finish_construction();
    return g;
}

void FiniteGroup::finish_construction() {
    int n = order_;
    for (const auto& row : table_)
        for (int v : row)
            if (v < 0 || v >= n) throw InputError("group table entry out of range");
    // Rows and columns are permutations.
    for (int i = 0; i < n; ++i) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (int j = 0; j < n; ++j) {
            if (seen_row[table_[i][j]]) throw InputError("group table row is not a permutation");
            seen_row[table_[i][j]] = true;
            if (seen_col[table_[j][i]]) throw InputError("group table column is not a permutation");
            seen_col[table_[j][i]] = true;
        }
    }
    // Locate the identity.
    identity_ = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
        if (ok) {
            identity_ = e;
            break;
        }
    }
    if (identity_ < 0) throw InputError("group table has no identity");
    // Associativity: exhaustive up to order 64, sampled above.
    auto check = [&](int a, int b, int c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) throw InputError("group table is not associative");
    };
    if (n <= 64) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) check(a, b, c);
    } else {
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int t = 0; t < 20000; ++t) check(pick(rng), pick(rng), pick(rng));
    }
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (table_[a][b] == identity_) inverse_[a] = b;
    for (int a = 0; a < n; ++a)
        if (inverse_[a] < 0) throw InputError("group table element without inverse");
}

FiniteGroup FiniteGroup::from_permutations(int degree, const std::vector<std::vector<int>>& generators) {
    for (const auto& p : generators) {
        if (static_cast<int>(p.size()) != degree) throw InputError("permutation size mismatch");
        std::vector<bool> seen(degree, false);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[v]) throw InputError("not a permutation");
            seen[v] = true;
        }
    }
    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> elements;
    index[id] = 0;
    elements.push_back(id);
    for (size_t head = 0; head < elements.size(); ++head) {
        for (const auto& gen : generators) {
            std::vector<int> prod(degree);
            for (int i = 0; i < degree; ++i) prod[i] = gen[elements[head][i]];
            if (index.emplace(prod, static_cast<int>(elements.size())).second) elements.push_back(prod);
            if (elements.size() > 20000) throw InputError("permutation closure too large");
        }
    }
    int n = static_cast<int>(elements.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> prod(degree);
            for (int i = 0; i < degree; ++i) prod[i] = elements[a][elements[b][i]];
            table[a][b] = index.at(prod);
        }
    return from_table(std::move(table));
}

FiniteGroup FiniteGroup::cyclic(int n) {
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    return from_table(std::move(table));
}

FiniteGroup FiniteGroup::symmetric(int n) {
    if (n < 1 || n > 4) throw InputError("symmetric(n) supported for n <= 4");
    std::vector<int> transposition(n), cycle(n);
    std::iota(transposition.begin(), transposition.end(), 0);
    if (n >= 2) std::swap(transposition[0], transposition[1]);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    return from_permutations(n, {transposition, cycle});
}

FiniteGroup FiniteGroup::dihedral(int n) {
    std::vector<int> rot(n), refl(n);
    for (int i = 0; i < n; ++i) rot[i] = (i + 1) % n;
    for (int i = 0; i < n; ++i) refl[i] = (n - i) % n;
    return from_permutations(n, {rot, refl});
}

FiniteGroup FiniteGroup::quaternion8() {
    // Q8 inside S8 acting on itself: generators i and j as permutations of
    // {1,-1,i,-i,j,-j,k,-k} indexed 0..7.
    // order: 1,-1,i,-i,j,-j,k,-k
    std::vector<int> mi = {2, 3, 1, 0, 6, 7, 5, 4}; // left-multiplication by i
    std::vector<int> mj = {4, 5, 7, 6, 1, 0, 2, 3}; // left-multiplication by j
    return from_permutations(8, {mi, mj});
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    int n = a.order() * b.order();
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    auto idx = [&](int x, int y) { return x * b.order() + y; };
    for (int x1 = 0; x1 < a.order(); ++x1)
        for (int y1 = 0; y1 < b.order(); ++y1)
            for (int x2 = 0; x2 < a.order(); ++x2)
                for (int y2 = 0; y2 < b.order(); ++y2)
                    table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
    return from_table(std::move(table));
}

int FiniteGroup::element_order(GroupElement g) const {
    GroupElement p = g;
    int k = 1;
    while (p != identity_) {
        p = mul(p, g);
        ++k;
        if (k > order_) throw InternalError("element order exceeds group order");
    }
    return k;
}

std::vector<GroupElement> FiniteGroup::cyclic_subgroup(GroupElement g) const {
    std::vector<GroupElement> h = {identity_};
    GroupElement p = g;
    while (p != identity_) {
        h.push_back(p);
        p = mul(p, g);
    }
    return h;
}

std::vector<std::vector<GroupElement>> FiniteGroup::cosets(GroupElement generator) const {
    std::vector<GroupElement> h = cyclic_subgroup(generator);
    std::vector<bool> used(order_, false);
    std::vector<std::vector<GroupElement>> parts;
    for (GroupElement x = 0; x < order_; ++x) {
        if (used[x]) continue;
        std::vector<GroupElement> coset;
        for (GroupElement s : h) {
            GroupElement y = mul(x, s);
            used[y] = true;
            coset.push_back(y);
        }
        std::sort(coset.begin(), coset.end());
        parts.push_back(std::move(coset));
    }
    return parts;
}

bool FiniteGroup::is_generating(const std::vector<GroupElement>& elements) const {
    std::vector<bool> reached(order_, false);
    std::vector<GroupElement> queue = {identity_};
    reached[identity_] = true;
    int count = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
        for (GroupElement g : elements) {
            GroupElement y = mul(queue[head], g);
            if (!reached[y]) {
                reached[y] = true;
                queue.push_back(y);
                ++count;
            }
        }
    }
    return count == order_;
}

std::vector<int> FiniteGroup::left_translation(GroupElement g) const {
    std::vector<int> p(order_);
    for (int x = 0; x < order_; ++x) p[x] = mul(g, x);
    return p;
}

bool generates_lattice(int d, const std::vector<AbelianElement>& images) {
    if (d == 0) return true;
    // Integer row reduction to Hermite-like form; generates iff the row
    // lattice has index 1, i.e. d pivots each equal to 1 after full reduction.
    std::vector<std::vector<long>> rows;
    for (const auto& v : images) {
        if (static_cast<int>(v.size()) != d) throw InputError("abelian image has wrong rank");
        rows.push_back(v);
    }
    int pivot_col = 0;
    size_t pivot_row = 0;
    std::vector<long> pivots;
    while (pivot_col < d && pivot_row < rows.size()) {
        // gcd-reduce the column below pivot_row.
        while (true) {
            size_t best = rows.size();
            long best_abs = 0;
            for (size_t r = pivot_row; r < rows.size(); ++r) {
                long v = std::abs(rows[r][pivot_col]);
                if (v != 0 && (best == rows.size() || v < best_abs)) {
                    best = r;
                    best_abs = v;
                }
            }
            if (best == rows.size()) break;
            std::swap(rows[pivot_row], rows[best]);
            bool all_zero = true;
            for (size_t r = pivot_row + 1; r < rows.size(); ++r) {
                long q = rows[r][pivot_col] / rows[pivot_row][pivot_col];
                for (int c = 0; c < d; ++c) rows[r][c] -= q * rows[pivot_row][c];
                if (rows[r][pivot_col] != 0) all_zero = false;
            }
            if (all_zero) break;
        }
        if (rows[pivot_row][pivot_col] != 0) {
            pivots.push_back(std::abs(rows[pivot_row][pivot_col]));
            ++pivot_row;
        }
        ++pivot_col;
    }
    if (static_cast<int>(pivots.size()) != d) return false;
    long det = 1;
    for (long p : pivots) det *= p;
    return det == 1;
}

} // namespace l2c
