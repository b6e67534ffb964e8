#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "tsopt/errors.hpp"
#include "tsopt/scalar.hpp"

namespace tsopt {

// Symmetric CSR pattern, both triangles stored, columns sorted per row.
struct SparsePattern {
    int size = 0;
    std::vector<int> row_start;
    std::vector<int> cols;
    std::vector<int> diag;  // position of (i, i)

    static std::shared_ptr<const SparsePattern> from_adjacency(const std::vector<std::vector<int>>& neighbors);

    int find(int i, int j) const {
        auto first = cols.begin() + row_start[i];
        auto last = cols.begin() + row_start[i + 1];
        auto it = std::lower_bound(first, last, j);
        return (it != last && *it == j) ? static_cast<int>(it - cols.begin()) : -1;
    }
};

template <class T>
struct SparseMatrix {
    std::shared_ptr<const SparsePattern> pattern;
    std::vector<T> values;

    SparseMatrix() = default;
    explicit SparseMatrix(std::shared_ptr<const SparsePattern> p) : pattern(std::move(p)), values(pattern->cols.size(), T(0.0)) {}

    int size() const { return pattern->size; }
    T& at(int i, int j) { return values[pattern->find(i, j)]; }
    T get(int i, int j) const {
        const int pos = pattern->find(i, j);
        return pos < 0 ? T(0.0) : values[pos];
    }

    std::vector<T> multiply(const std::vector<T>& x) const {
        std::vector<T> y(size(), T(0.0));
        for (int i = 0; i < size(); ++i) {
            T acc(0.0);
            for (int p = pattern->row_start[i]; p < pattern->row_start[i + 1]; ++p) acc = acc + values[p] * x[pattern->cols[p]];
            y[i] = acc;
        }
        return y;
    }

    T quadratic_form(const std::vector<T>& x) const {
        const auto y = multiply(x);
        T acc(0.0);
        for (int i = 0; i < size(); ++i) acc = acc + x[i] * y[i];
        return acc;
    }
};

// Reverse Cuthill-McKee ordering: perm[new] = old.
std::vector<int> reverse_cuthill_mckee(const SparsePattern& pattern);

// Unpivoted LDL^T in envelope storage. Uses plain transposition, never conjugation,
// so complex-step and hyper-dual systems keep their analytic structure.
template <class T>
class EnvelopeLdlt {
public:
    static constexpr double kPivotTolerance = 1e-14;

    EnvelopeLdlt(const SparseMatrix<T>& a, const std::vector<int>& perm) : perm_(perm) {
        const auto& pat = *a.pattern;
        n_ = pat.size;
        inv_.assign(n_, 0);
        for (int i = 0; i < n_; ++i) inv_[perm_[i]] = i;

        first_.assign(n_, 0);
        for (int i = 0; i < n_; ++i) {
            int f = i;
            const int old = perm_[i];
            for (int p = pat.row_start[old]; p < pat.row_start[old + 1]; ++p) f = std::min(f, inv_[pat.cols[p]]);
            first_[i] = f;
        }
        start_.assign(n_ + 1, 0);
        for (int i = 0; i < n_; ++i) start_[i + 1] = start_[i] + (i - first_[i]);
        lower_.assign(start_[n_], T(0.0));
        diag_.assign(n_, T(0.0));

        double scale = 0.0;
        for (int i = 0; i < n_; ++i) {
            const int old = perm_[i];
            for (int p = pat.row_start[old]; p < pat.row_start[old + 1]; ++p) {
                const int j = inv_[pat.cols[p]];
                if (j < i)
                    lower_[start_[i] + (j - first_[i])] = a.values[p];
                else if (j == i)
                    diag_[i] = a.values[p];
            }
            scale = std::max(scale, scale_of(diag_[i]));
        }
        if (scale == 0.0) scale = 1.0;

        for (int i = 0; i < n_; ++i) {
            T* row = lower_.data() + start_[i];
            const int fi = first_[i];
            // Row i first holds g_ij = L_ij D_j, then is scaled to L_ij.
            for (int j = fi; j < i; ++j) {
                const int k0 = std::max(fi, first_[j]);
                const T* rj = lower_.data() + start_[j];
                T s = row[j - fi];
                for (int k = k0; k < j; ++k) s = s - row[k - fi] * rj[k - first_[j]];
                row[j - fi] = s;
            }
            T d = diag_[i];
            for (int j = fi; j < i; ++j) {
                const T l = row[j - fi] / diag_[j];
                d = d - l * row[j - fi];
                row[j - fi] = l;
            }
            if (scale_of(d) < kPivotTolerance * scale) throw SolverBreakdown("vanishing pivot in LDL^T factorization");
            diag_[i] = d;
        }
    }

    std::vector<T> solve(const std::vector<T>& b) const {
        std::vector<T> x(n_);
        for (int i = 0; i < n_; ++i) x[i] = b[perm_[i]];
        for (int i = 0; i < n_; ++i) {
            const T* row = lower_.data() + start_[i];
            T s = x[i];
            for (int j = first_[i]; j < i; ++j) s = s - row[j - first_[i]] * x[j];
            x[i] = s;
        }
        for (int i = 0; i < n_; ++i) x[i] = x[i] / diag_[i];
        for (int i = n_ - 1; i >= 0; --i) {
            const T* row = lower_.data() + start_[i];
            const T xi = x[i];
            for (int j = first_[i]; j < i; ++j) x[j] = x[j] - row[j - first_[i]] * xi;
        }
        std::vector<T> out(n_);
        for (int i = 0; i < n_; ++i) out[perm_[i]] = x[i];
        return out;
    }

    const std::vector<T>& pivots() const { return diag_; }
    std::size_t envelope_size() const { return lower_.size(); }

private:
    int n_ = 0;
    std::vector<int> perm_, inv_, first_, start_;
    std::vector<T> lower_, diag_;
};

}  // namespace tsopt
