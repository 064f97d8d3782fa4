#include "simptop/matrix.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace simptop {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    IntMatrix out(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Int& x = (*this)(r, k);
            if (x == 0) continue;
            for (int c = 0; c < o.cols_; ++c) {
                const Int& y = o(k, c);
                if (y != 0) out(r, c) += x * y;
            }
        }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
    return out;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = -a_[i];
    return out;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix apply: size mismatch");
    std::vector<Int> out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) {
        Int s = 0;
        for (int c = 0; c < cols_; ++c) {
            const Int& x = (*this)(r, c);
            if (x != 0 && v[static_cast<std::size_t>(c)] != 0) s += x * v[static_cast<std::size_t>(c)];
        }
        out[static_cast<std::size_t>(r)] = s;
    }
    return out;
}

IntMatrix IntMatrix::columns(const std::vector<int>& idx) const {
    IntMatrix out(rows_, static_cast<int>(idx.size()));
    for (int c = 0; c < out.cols_; ++c)
        for (int r = 0; r < rows_; ++r) out(r, c) = (*this)(r, idx[static_cast<std::size_t>(c)]);
    return out;
}

IntMatrix IntMatrix::rows_slice(int from) const {
    IntMatrix out(rows_ - from, cols_);
    for (int r = from; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out(r - from, c) = (*this)(r, c);
    return out;
}

void IntMatrix::set_column(int c, const std::vector<Int>& v) {
    for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[static_cast<std::size_t>(r)];
}

std::vector<Int> IntMatrix::column(int c) const {
    std::vector<Int> v(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) v[static_cast<std::size_t>(r)] = (*this)(r, c);
    return v;
}

IntMatrix IntMatrix::hcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
    IntMatrix out(a.rows(), a.cols() + b.cols());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
        for (int c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
    }
    return out;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) {
        os << (r == 0 ? "[" : " ");
        for (int c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c).str();
        os << (r + 1 == rows_ ? "]" : "\n");
    }
    if (rows_ == 0) os << "[]";
    return os.str();
}

std::vector<Int> SmithResult::factors() const {
    std::vector<Int> out;
    for (int i = 0; i < rank; ++i) out.push_back(d(i, i));
    return out;
}

namespace {

struct Transformer {
    IntMatrix a;
    IntMatrix u, u_inv, v, v_inv;
    bool track;

    explicit Transformer(const IntMatrix& m, bool track_) : a(m), track(track_) {
        if (track) {
            u = IntMatrix::identity(m.rows());
            u_inv = IntMatrix::identity(m.rows());
            v = IntMatrix::identity(m.cols());
            v_inv = IntMatrix::identity(m.cols());
        }
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
        if (!track) return;
        for (int c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
        for (int r = 0; r < u_inv.rows(); ++r) std::swap(u_inv(r, i), u_inv(r, j));
    }

    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
        if (!track) return;
        for (int r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
        for (int c = 0; c < v_inv.cols(); ++c) std::swap(v_inv(i, c), v_inv(j, c));
    }

    // row i += q * row j; inverse op recorded on u_inv columns
    void add_row(int i, int j, const Int& q) {
        if (q == 0) return;
        for (int c = 0; c < a.cols(); ++c) a(i, c) += q * a(j, c);
        if (!track) return;
        for (int c = 0; c < u.cols(); ++c) u(i, c) += q * u(j, c);
        for (int r = 0; r < u_inv.rows(); ++r) u_inv(r, j) -= q * u_inv(r, i);
    }

    void add_col(int i, int j, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < a.rows(); ++r) a(r, i) += q * a(r, j);
        if (!track) return;
        for (int r = 0; r < v.rows(); ++r) v(r, i) += q * v(r, j);
        for (int c = 0; c < v_inv.cols(); ++c) v_inv(j, c) -= q * v_inv(i, c);
    }

    void negate_row(int i) {
        for (int c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
        if (!track) return;
        for (int c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
        for (int r = 0; r < u_inv.rows(); ++r) u_inv(r, i) = -u_inv(r, i);
    }
};

void smith_reduce(Transformer& t, int& rank_out) {
    IntMatrix& a = t.a;
    const int n = std::min(a.rows(), a.cols());
    int k = 0;
    for (; k < n; ++k) {
        // pick the smallest-|value| pivot in the trailing block, rows first
        int pr = -1, pc = -1;
        Int best = 0;
        for (int r = k; r < a.rows(); ++r)
            for (int c = k; c < a.cols(); ++c) {
                const Int& x = a(r, c);
                if (x == 0) continue;
                Int ax = abs(x);
                if (pr < 0 || ax < best) {
                    best = ax;
                    pr = r;
                    pc = c;
                }
            }
        if (pr < 0) break; // trailing block zero
        t.swap_rows(k, pr);
        t.swap_cols(k, pc);

        for (;;) {
            bool clean = true;
            // clear column k with row ops
            for (int r = k + 1; r < a.rows(); ++r) {
                if (a(r, k) == 0) continue;
                Int q = a(r, k) / a(k, k);
                t.add_row(r, k, -q);
                if (a(r, k) != 0) {
                    // remainder smaller than pivot: swap up and restart
                    t.swap_rows(k, r);
                    clean = false;
                }
            }
            if (!clean) continue;
            // clear row k with column ops
            for (int c = k + 1; c < a.cols(); ++c) {
                if (a(k, c) == 0) continue;
                Int q = a(k, c) / a(k, k);
                t.add_col(c, k, -q);
                if (a(k, c) != 0) {
                    t.swap_cols(k, c);
                    clean = false;
                }
            }
            if (clean) break;
        }
        if (a(k, k) < 0) t.negate_row(k);
    }
    rank_out = k;

    // enforce the divisibility chain d_k | d_{k+1}
    for (int i = 0; i + 1 < rank_out; ++i) {
        for (int j = i + 1; j < rank_out; ++j) {
            if (a(j, j) % a(i, i) == 0) continue;
            // fold d_j into position i: col_i += col_j, then re-reduce 2x2 corner
            t.add_col(i, j, 1);
            // now a(j,i) = d_j; run a localized reduction from position i
            for (;;) {
                bool clean = true;
                for (int r = i + 1; r < a.rows(); ++r) {
                    if (a(r, i) == 0) continue;
                    Int q = a(r, i) / a(i, i);
                    t.add_row(r, i, -q);
                    if (a(r, i) != 0) {
                        t.swap_rows(i, r);
                        clean = false;
                    }
                }
                if (!clean) continue;
                for (int c = i + 1; c < a.cols(); ++c) {
                    if (a(i, c) == 0) continue;
                    Int q = a(i, c) / a(i, i);
                    t.add_col(c, i, -q);
                    if (a(i, c) != 0) {
                        t.swap_cols(i, c);
                        clean = false;
                    }
                }
                if (clean) break;
            }
            if (a(i, i) < 0) t.negate_row(i);
            if (a(j, j) < 0) t.negate_row(j);
        }
    }
}

} // namespace

SmithResult smith_normal_form(const IntMatrix& a) {
    Transformer t(a, true);
    SmithResult res;
    smith_reduce(t, res.rank);
    res.d = std::move(t.a);
    res.u = std::move(t.u);
    res.u_inv = std::move(t.u_inv);
    res.v = std::move(t.v);
    res.v_inv = std::move(t.v_inv);
    return res;
}

std::vector<Int> smith_factors(const IntMatrix& a) {
    Transformer t(a, false);
    int rank = 0;
    smith_reduce(t, rank);
    std::vector<Int> out;
    for (int i = 0; i < rank; ++i) out.push_back(t.a(i, i));
    return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
    SmithResult s = smith_normal_form(a);
    std::vector<int> idx;
    for (int c = s.rank; c < a.cols(); ++c) idx.push_back(c);
    return s.v.columns(idx);
}

bool lattice_contains(const SmithResult& s, const std::vector<Int>& v) {
    std::vector<Int> w = s.u.apply(v);
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        if (i < s.rank) {
            if (w[static_cast<std::size_t>(i)] % s.d(i, i) != 0) return false;
        } else {
            if (w[static_cast<std::size_t>(i)] != 0) return false;
        }
    }
    return true;
}

bool lattice_subset(const IntMatrix& a, const IntMatrix& b) {
    SmithResult s = smith_normal_form(b);
    for (int c = 0; c < a.cols(); ++c)
        if (!lattice_contains(s, a.column(c))) return false;
    return true;
}

bool lattices_equal(const IntMatrix& a, const IntMatrix& b) {
    return lattice_subset(a, b) && lattice_subset(b, a);
}

namespace {

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("sparse reduction overflow");
    return r;
}

long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("sparse reduction overflow");
    return r;
}

} // namespace

SparseRankResult sparse_rank_and_factors(SparseMatrix m) {
    // column-major working copies with per-row occupancy sets
    const int ncols = static_cast<int>(m.cols.size());
    std::vector<std::map<int, long long>> col(static_cast<std::size_t>(ncols));
    std::vector<std::set<int>> row_occ(static_cast<std::size_t>(m.rows));
    std::vector<bool> col_alive(static_cast<std::size_t>(ncols), true);
    std::vector<bool> row_alive(static_cast<std::size_t>(m.rows), true);

    for (int c = 0; c < ncols; ++c)
        for (auto& [r, val] : m.cols[static_cast<std::size_t>(c)])
            if (val != 0) {
                col[static_cast<std::size_t>(c)][r] = val;
                row_occ[static_cast<std::size_t>(r)].insert(c);
            }

    SparseRankResult res;

    // Repeatedly eliminate the cheapest unit pivot (Markowitz cost).
    // A candidate set keyed by cost keeps the scan near O(nnz log n).
    auto col_cost = [&](int c) -> long long {
        long long best = -1;
        for (auto& [r, val] : col[static_cast<std::size_t>(c)]) {
            if (val != 1 && val != -1) continue;
            long long cost = static_cast<long long>(col[static_cast<std::size_t>(c)].size() - 1) *
                             static_cast<long long>(row_occ[static_cast<std::size_t>(r)].size() - 1);
            if (best < 0 || cost < best) best = cost;
        }
        return best; // -1 when the column has no unit entry
    };

    std::set<std::pair<long long, int>> queue; // (cost, col)
    std::vector<long long> queued_cost(static_cast<std::size_t>(ncols), -2);
    auto requeue = [&](int c) {
        if (!col_alive[static_cast<std::size_t>(c)]) return;
        long long cost = col_cost(c);
        if (queued_cost[static_cast<std::size_t>(c)] >= 0)
            queue.erase({queued_cost[static_cast<std::size_t>(c)], c});
        if (cost >= 0) queue.insert({cost, c});
        queued_cost[static_cast<std::size_t>(c)] = cost;
    };
    for (int c = 0; c < ncols; ++c) requeue(c);

    while (!queue.empty()) {
        int pc = queue.begin()->second;
        queue.erase(queue.begin());
        queued_cost[static_cast<std::size_t>(pc)] = -2;
        if (!col_alive[static_cast<std::size_t>(pc)]) continue;

        // pick the unit entry of minimal cost inside this column
        int pr = -1;
        long long best_cost = -1;
        for (auto& [r, val] : col[static_cast<std::size_t>(pc)]) {
            if (val != 1 && val != -1) continue;
            long long cost = static_cast<long long>(col[static_cast<std::size_t>(pc)].size() - 1) *
                             static_cast<long long>(row_occ[static_cast<std::size_t>(r)].size() - 1);
            if (pr < 0 || cost < best_cost) {
                pr = r;
                best_cost = cost;
            }
        }
        if (pr < 0) continue; // stale entry

        long long pivot = col[static_cast<std::size_t>(pc)][pr];

        // Schur update: for every other column c with entry a at row pr,
        // c <- c - (a/pivot) * pivot_col
        std::vector<int> touched;
        std::vector<int> other_cols(row_occ[static_cast<std::size_t>(pr)].begin(),
                                    row_occ[static_cast<std::size_t>(pr)].end());
        for (int c : other_cols) {
            if (c == pc) continue;
            long long a = col[static_cast<std::size_t>(c)][pr];
            long long q = a / pivot; // pivot is ±1, exact
            for (auto& [r, val] : col[static_cast<std::size_t>(pc)]) {
                if (r == pr) continue;
                auto& target = col[static_cast<std::size_t>(c)];
                auto it = target.find(r);
                long long nv = checked_sub(it == target.end() ? 0 : it->second, checked_mul(q, val));
                if (nv == 0) {
                    if (it != target.end()) {
                        target.erase(it);
                        row_occ[static_cast<std::size_t>(r)].erase(c);
                    }
                } else {
                    if (it == target.end()) row_occ[static_cast<std::size_t>(r)].insert(c);
                    target[r] = nv;
                }
            }
            col[static_cast<std::size_t>(c)].erase(pr);
            row_occ[static_cast<std::size_t>(pr)].erase(c);
            touched.push_back(c);
        }

        // retire pivot row and column
        for (auto& [r, val] : col[static_cast<std::size_t>(pc)]) row_occ[static_cast<std::size_t>(r)].erase(pc);
        col[static_cast<std::size_t>(pc)].clear();
        col_alive[static_cast<std::size_t>(pc)] = false;
        row_alive[static_cast<std::size_t>(pr)] = false;
        // rows of the retired pivot column may still hold entries of other
        // columns; their costs changed, as did the touched columns'
        ++res.unit_pivots;

        for (int c : touched) requeue(c);
        // columns sharing rows with the pivot column also changed cost
        // (handled lazily: stale queue entries are skipped above)
    }

    // Dense residual: collect surviving entries.
    std::map<int, int> row_index;
    std::vector<int> live_cols;
    for (int c = 0; c < ncols; ++c)
        if (col_alive[static_cast<std::size_t>(c)] && !col[static_cast<std::size_t>(c)].empty()) live_cols.push_back(c);
    for (int c : live_cols)
        for (auto& [r, val] : col[static_cast<std::size_t>(c)])
            if (!row_index.count(r)) {
                int id = static_cast<int>(row_index.size());
                row_index[r] = id;
            }
    IntMatrix residual(static_cast<int>(row_index.size()), static_cast<int>(live_cols.size()));
    for (int j = 0; j < static_cast<int>(live_cols.size()); ++j)
        for (auto& [r, val] : col[static_cast<std::size_t>(live_cols[static_cast<std::size_t>(j)])])
            residual(row_index[r], j) = val;
    res.residual_factors = smith_factors(residual);
    return res;
}

} // namespace simptop
