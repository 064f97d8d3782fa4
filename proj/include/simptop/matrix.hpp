#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace simptop {

using Int = boost::multiprecision::cpp_int;

/// Dense matrix of arbitrary-precision integers. Row-major storage.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Int& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    bool is_zero() const;
    bool is_identity() const;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-() const;

    std::vector<Int> apply(const std::vector<Int>& v) const;

    IntMatrix columns(const std::vector<int>& idx) const;
    IntMatrix rows_slice(int from) const; // rows [from, rows_)
    void set_column(int c, const std::vector<Int>& v);
    std::vector<Int> column(int c) const;

    /// Horizontal concatenation [A | B].
    static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);

    std::string to_string() const;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

/// Smith normal form U * A * V = D with U, V unimodular.
///
/// Pivoting rule: among the nonzero entries of the trailing submatrix, pick
/// one of smallest absolute value, scanning rows before columns. Fully
/// deterministic, so downstream generator bases are reproducible.
struct SmithResult {
    IntMatrix d;             // diagonal, invariant factors d(0,0) | d(1,1) | ...
    IntMatrix u, u_inv;      // row transform and its inverse
    IntMatrix v, v_inv;      // column transform and its inverse
    int rank = 0;

    /// Invariant factors (the nonzero diagonal entries), in order.
    std::vector<Int> factors() const;
};

SmithResult smith_normal_form(const IntMatrix& a);

/// Nonzero invariant factors only; no transform tracking (faster).
std::vector<Int> smith_factors(const IntMatrix& a);

/// Basis of the integer kernel of A, as matrix columns.
IntMatrix integer_kernel(const IntMatrix& a);

/// Does the integer column lattice of A contain v? (Solvability of A x = v over Z.)
bool lattice_contains(const SmithResult& snf_of_a, const std::vector<Int>& v);

/// Lattice(A) ⊆ Lattice(B) and the reverse, via SNF solvability column by column.
bool lattice_subset(const IntMatrix& a, const IntMatrix& b);
bool lattices_equal(const IntMatrix& a, const IntMatrix& b);

/// Sparse elimination of unit (±1) pivots with Markowitz-style pivot choice,
/// for homology of complexes too large for dense SNF. Returns the number of
/// unit pivots eliminated plus the invariant factors of the dense residual.
struct SparseRankResult {
    long long unit_pivots = 0;
    std::vector<Int> residual_factors; // nonzero invariant factors of the residual
    int rank() const { return static_cast<int>(unit_pivots) + static_cast<int>(residual_factors.size()); }
    bool torsion_free() const {
        for (const auto& f : residual_factors)
            if (f != 1 && f != -1) return false;
        return true;
    }
    std::vector<Int> nontrivial_factors() const {
        std::vector<Int> out;
        for (const auto& f : residual_factors)
            if (f > 1) out.push_back(f);
        return out;
    }
};

/// A sparse integer matrix given as column lists of (row, value) pairs.
struct SparseMatrix {
    int rows = 0;
    std::vector<std::vector<std::pair<int, long long>>> cols;
};

SparseRankResult sparse_rank_and_factors(SparseMatrix m);

} // namespace simptop
