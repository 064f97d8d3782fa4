#include "simptop/homology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace simptop {

std::optional<int> ChainComplexZ::basis_index(int n, const std::string& label) const {
    if (n < 0 || n > top_degree()) return std::nullopt;
    const auto& b = basis[static_cast<std::size_t>(n)];
    auto it = std::find(b.begin(), b.end(), label);
    if (it == b.end()) return std::nullopt;
    return static_cast<int>(it - b.begin());
}

void ChainComplexZ::validate() const {
    if (basis.size() != boundary.size()) throw std::invalid_argument("chain complex: basis/boundary size mismatch");
    for (int n = 0; n <= top_degree(); ++n) {
        const IntMatrix& d_n = d(n);
        if (d_n.cols() != rank(n)) throw std::invalid_argument("chain complex: boundary column mismatch");
        int expect_rows = n == 0 ? 0 : rank(n - 1);
        if (d_n.rows() != expect_rows) throw std::invalid_argument("chain complex: boundary row mismatch");
        std::set<std::string> seen(basis[static_cast<std::size_t>(n)].begin(), basis[static_cast<std::size_t>(n)].end());
        if (static_cast<int>(seen.size()) != rank(n))
            throw std::invalid_argument("chain complex: duplicate basis labels");
        if (n >= 1 && !(d(n - 1) * d_n).is_zero())
            throw std::invalid_argument("chain complex: d. d != 0 at degree " + std::to_string(n));
    }
}

std::string complex_simplex_label(const SimplicialComplex& k, const Simplex& s) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << k.vertex_name(s[i]);
    os << ")";
    return os.str();
}

ChainComplexZ chain_complex(const SimplicialComplex& k, const SimplexSet* rel) {
    if (rel && !k.is_subcomplex(*rel))
        throw std::invalid_argument("chain_complex: relative family is not a subcomplex");
    int top = k.dim();
    ChainComplexZ c;
    if (top < 0) {
        c.basis.push_back({});
        c.boundary.push_back(IntMatrix(0, 0));
        return c;
    }
    std::vector<std::map<Simplex, int>> index(static_cast<std::size_t>(top) + 1);
    c.basis.resize(static_cast<std::size_t>(top) + 1);
    for (const auto& s : k.simplices()) {
        if (rel && rel->count(s)) continue;
        int n = static_cast<int>(s.size()) - 1;
        index[static_cast<std::size_t>(n)][s] = static_cast<int>(c.basis[static_cast<std::size_t>(n)].size());
        c.basis[static_cast<std::size_t>(n)].push_back(complex_simplex_label(k, s));
    }
    c.boundary.resize(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) {
        IntMatrix d(n == 0 ? 0 : c.rank(n - 1), c.rank(n));
        if (n > 0) {
            for (const auto& [s, col] : index[static_cast<std::size_t>(n)]) {
                Simplex face;
                for (std::size_t drop = 0; drop < s.size(); ++drop) {
                    face.clear();
                    for (std::size_t i = 0; i < s.size(); ++i)
                        if (i != drop) face.push_back(s[i]);
                    auto it = index[static_cast<std::size_t>(n - 1)].find(face);
                    if (it == index[static_cast<std::size_t>(n - 1)].end()) continue; // in rel
                    d(it->second, col) += (drop % 2 == 0) ? 1 : -1;
                }
            }
        }
        c.boundary[static_cast<std::size_t>(n)] = std::move(d);
    }
    // drop empty top degrees so top_degree() reflects actual content
    while (c.top_degree() > 0 && c.rank(c.top_degree()) == 0) {
        c.basis.pop_back();
        c.boundary.pop_back();
    }
    return c;
}

ChainComplexZ chain_complex(const FiniteSimplicialSet& x, const std::set<int>* rel) {
    if (rel) {
        // rel must be face-closed
        for (int g : *rel) {
            const auto& gen = x.generator(g);
            for (const auto& f : gen.faces)
                if (!rel->count(f.gen))
                    throw std::invalid_argument("chain_complex: relative generator set is not face-closed");
        }
    }
    int top = x.top_dim();
    ChainComplexZ c;
    if (top < 0) {
        c.basis.push_back({});
        c.boundary.push_back(IntMatrix(0, 0));
        return c;
    }
    c.basis.resize(static_cast<std::size_t>(top) + 1);
    std::vector<std::map<int, int>> index(static_cast<std::size_t>(top) + 1); // gen id -> column
    for (int g = 0; g < x.generator_count(); ++g) {
        if (rel && rel->count(g)) continue;
        int n = x.generator(g).dim;
        index[static_cast<std::size_t>(n)][g] = static_cast<int>(c.basis[static_cast<std::size_t>(n)].size());
        c.basis[static_cast<std::size_t>(n)].push_back(x.generator(g).label);
    }
    c.boundary.resize(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) {
        IntMatrix d(n == 0 ? 0 : c.rank(n - 1), c.rank(n));
        if (n > 0) {
            for (const auto& [g, col] : index[static_cast<std::size_t>(n)]) {
                const auto& gen = x.generator(g);
                for (int i = 0; i <= n; ++i) {
                    const SSimplex& f = gen.faces[static_cast<std::size_t>(i)];
                    if (f.degenerate()) continue; // normalized chains
                    auto it = index[static_cast<std::size_t>(n - 1)].find(f.gen);
                    if (it == index[static_cast<std::size_t>(n - 1)].end()) continue; // in rel
                    d(it->second, col) += (i % 2 == 0) ? 1 : -1;
                }
            }
        }
        c.boundary[static_cast<std::size_t>(n)] = std::move(d);
    }
    while (c.top_degree() > 0 && c.rank(c.top_degree()) == 0) {
        c.basis.pop_back();
        c.boundary.pop_back();
    }
    return c;
}

std::string HomologyGroup::to_string() const {
    std::ostringstream os;
    if (is_zero()) return "0";
    bool first = true;
    if (free_rank == 1) {
        os << "Z";
        first = false;
    } else if (free_rank > 1) {
        os << "Z^" << free_rank;
        first = false;
    }
    for (const auto& t : torsion) {
        os << (first ? "" : " + ") << "Z/" << t.str();
        first = false;
    }
    return os.str();
}

std::vector<Int> HomologyDegree::classify(const std::vector<Int>& z) const {
    std::vector<Int> alpha_full = v_inv1.apply(z);
    for (int i = 0; i < rank1; ++i)
        if (alpha_full[static_cast<std::size_t>(i)] != 0)
            throw std::invalid_argument("classify: chain is not a cycle");
    std::vector<Int> alpha(alpha_full.begin() + rank1, alpha_full.end());
    std::vector<Int> beta = u2.apply(alpha);
    std::vector<Int> out;
    for (int i = 0; i < rank2; ++i) {
        if (factors2[static_cast<std::size_t>(i)] > 1) {
            Int r = beta[static_cast<std::size_t>(i)] % factors2[static_cast<std::size_t>(i)];
            if (r < 0) r += factors2[static_cast<std::size_t>(i)];
            out.push_back(r);
        }
    }
    for (std::size_t j = static_cast<std::size_t>(rank2); j < beta.size(); ++j) out.push_back(beta[j]);
    return out;
}

IntMatrix HomologyDegree::relation_lattice() const {
    IntMatrix r(coord_dim(), static_cast<int>(orders.size()));
    for (int i = 0; i < static_cast<int>(orders.size()); ++i) r(i, i) = orders[static_cast<std::size_t>(i)];
    return r;
}

const HomologyGroup& ComplexHomology::group(int n) const {
    static const HomologyGroup zero{};
    if (n < 0 || n > top()) return zero;
    return degrees[static_cast<std::size_t>(n)].group;
}

std::vector<HomologyGroup> ComplexHomology::graded() const {
    std::vector<HomologyGroup> out;
    for (const auto& d : degrees) out.push_back(d.group);
    return out;
}

ComplexHomology homology(const ChainComplexZ& c) {
    c.validate();
    ComplexHomology h;
    for (int n = 0; n <= c.top_degree(); ++n) {
        HomologyDegree deg;
        const IntMatrix& dn = c.d(n);
        SmithResult s1 = smith_normal_form(dn);
        deg.rank1 = s1.rank;
        deg.v_inv1 = s1.v_inv;
        int m = c.rank(n) - s1.rank; // cycle space dimension

        // kernel basis: columns rank1.. of V1
        std::vector<int> ker_cols;
        for (int j = s1.rank; j < c.rank(n); ++j) ker_cols.push_back(j);
        IntMatrix kernel = s1.v.columns(ker_cols);

        // image of d_{n+1} in kernel coordinates
        IntMatrix x(m, 0);
        if (n + 1 <= c.top_degree()) {
            IntMatrix full = s1.v_inv * c.d(n + 1);
            x = full.rows_slice(s1.rank);
        }
        SmithResult s2 = smith_normal_form(x);
        deg.rank2 = s2.rank;
        deg.u2 = s2.u;
        deg.factors2 = s2.factors();

        IntMatrix gens = kernel * s2.u_inv;
        for (int i = 0; i < s2.rank; ++i)
            if (deg.factors2[static_cast<std::size_t>(i)] > 1) {
                deg.gens.push_back(gens.column(i));
                deg.orders.push_back(deg.factors2[static_cast<std::size_t>(i)]);
                deg.group.torsion.push_back(deg.factors2[static_cast<std::size_t>(i)]);
            }
        for (int j = s2.rank; j < m; ++j) deg.gens.push_back(gens.column(j));
        deg.group.free_rank = m - s2.rank;
        h.degrees.push_back(std::move(deg));
    }
    return h;
}

std::vector<HomologyGroup> homology_groups_from_sparse(const std::vector<long long>& dims,
                                                       std::vector<SparseMatrix> boundaries) {
    const int top = static_cast<int>(dims.size()) - 1;
    std::vector<SparseRankResult> red(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) red[static_cast<std::size_t>(n)] = sparse_rank_and_factors(std::move(boundaries[static_cast<std::size_t>(n)]));
    std::vector<HomologyGroup> out(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) {
        long long rank_dn = red[static_cast<std::size_t>(n)].rank();
        long long rank_dn1 = n + 1 <= top ? red[static_cast<std::size_t>(n + 1)].rank() : 0;
        out[static_cast<std::size_t>(n)].free_rank = dims[static_cast<std::size_t>(n)] - rank_dn - rank_dn1;
        if (n + 1 <= top) out[static_cast<std::size_t>(n)].torsion = red[static_cast<std::size_t>(n + 1)].nontrivial_factors();
        if (out[static_cast<std::size_t>(n)].free_rank < 0)
            throw std::logic_error("sparse homology: negative free rank (invalid complex)");
    }
    return out;
}

std::vector<HomologyGroup> homology_groups_sparse(const ChainComplexZ& c) {
    std::vector<long long> dims;
    std::vector<SparseMatrix> bnds;
    for (int n = 0; n <= c.top_degree(); ++n) {
        dims.push_back(c.rank(n));
        SparseMatrix m;
        m.rows = c.d(n).rows();
        m.cols.resize(static_cast<std::size_t>(c.d(n).cols()));
        for (int col = 0; col < c.d(n).cols(); ++col)
            for (int row = 0; row < c.d(n).rows(); ++row)
                if (c.d(n)(row, col) != 0)
                    m.cols[static_cast<std::size_t>(col)].push_back(
                        {row, static_cast<long long>(c.d(n)(row, col))});
        bnds.push_back(std::move(m));
    }
    return homology_groups_from_sparse(dims, std::move(bnds));
}

bool graded_groups_equal(const std::vector<HomologyGroup>& a, const std::vector<HomologyGroup>& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        HomologyGroup x = i < a.size() ? a[i] : HomologyGroup{};
        HomologyGroup y = i < b.size() ? b[i] : HomologyGroup{};
        if (!(x == y)) return false;
    }
    return true;
}

const IntMatrix& ChainMapZ::at(int n) const {
    static const IntMatrix empty(0, 0);
    if (n < 0 || n >= static_cast<int>(mats.size())) return empty;
    return mats[static_cast<std::size_t>(n)];
}

void ChainMapZ::validate() const {
    int top = std::max(src.top_degree(), dst.top_degree());
    for (int n = 0; n <= top; ++n) {
        IntMatrix f_n = n < static_cast<int>(mats.size()) ? mats[static_cast<std::size_t>(n)]
                                                          : IntMatrix(dst.rank(n), src.rank(n));
        if (f_n.cols() != src.rank(n) || f_n.rows() != dst.rank(n))
            throw std::invalid_argument("chain map: shape mismatch at degree " + std::to_string(n));
        if (n == 0) continue;
        IntMatrix f_prev = (n - 1) < static_cast<int>(mats.size()) ? mats[static_cast<std::size_t>(n - 1)]
                                                                   : IntMatrix(dst.rank(n - 1), src.rank(n - 1));
        IntMatrix lhs(dst.rank(n - 1), src.rank(n));
        if (n <= dst.top_degree()) lhs = dst.d(n) * f_n;
        IntMatrix rhs(dst.rank(n - 1), src.rank(n));
        if (n <= src.top_degree()) rhs = f_prev * src.d(n);
        if (!(lhs + (-rhs)).is_zero())
            throw std::invalid_argument("chain map does not commute with boundaries at degree " + std::to_string(n));
    }
}

namespace {

IntMatrix label_matrix(const ChainComplexZ& from, const ChainComplexZ& to, int n, bool require_all) {
    IntMatrix m(to.rank(n), from.rank(n));
    for (int c = 0; c < from.rank(n); ++c) {
        const std::string& label = from.basis[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)];
        auto idx = to.basis_index(n, label);
        if (idx)
            m(*idx, c) = 1;
        else if (require_all)
            throw std::invalid_argument("label '" + label + "' missing in target complex");
    }
    return m;
}

} // namespace

ChainMapZ inclusion_chain_map(const ChainComplexZ& sub, const ChainComplexZ& whole) {
    ChainMapZ f;
    f.src = sub;
    f.dst = whole;
    for (int n = 0; n <= std::max(sub.top_degree(), whole.top_degree()); ++n)
        f.mats.push_back(label_matrix(sub, whole, n, true));
    f.validate();
    return f;
}

ChainMapZ projection_chain_map(const ChainComplexZ& whole, const ChainComplexZ& quotient) {
    ChainMapZ f;
    f.src = whole;
    f.dst = quotient;
    for (int n = 0; n <= std::max(whole.top_degree(), quotient.top_degree()); ++n)
        f.mats.push_back(label_matrix(whole, quotient, n, false));
    f.validate();
    return f;
}

ChainMapZ identity_chain_map(const ChainComplexZ& c) {
    ChainMapZ f;
    f.src = c;
    f.dst = c;
    for (int n = 0; n <= c.top_degree(); ++n) f.mats.push_back(IntMatrix::identity(c.rank(n)));
    return f;
}

ChainMapZ compose(const ChainMapZ& g, const ChainMapZ& f) {
    if (!(g.src == f.dst)) throw std::invalid_argument("compose: middle complexes differ");
    ChainMapZ h;
    h.src = f.src;
    h.dst = g.dst;
    int top = std::max(f.src.top_degree(), g.dst.top_degree());
    auto mat_at = [](const ChainMapZ& x, int n) {
        if (n < static_cast<int>(x.mats.size())) return x.mats[static_cast<std::size_t>(n)];
        return IntMatrix(x.dst.rank(n), x.src.rank(n));
    };
    for (int n = 0; n <= top; ++n) h.mats.push_back(mat_at(g, n) * mat_at(f, n));
    return h;
}

namespace {

IntMatrix induced_matrix_at(const ChainMapZ& f, const ComplexHomology& hs, const ComplexHomology& ht, int n) {
    int src_gens = n <= hs.top() ? static_cast<int>(hs.degrees[static_cast<std::size_t>(n)].gens.size()) : 0;
    int dst_dim = n <= ht.top() ? ht.degrees[static_cast<std::size_t>(n)].coord_dim() : 0;
    IntMatrix m(dst_dim, src_gens);
    if (src_gens == 0 || n > hs.top()) return m;
    const auto& sd = hs.degrees[static_cast<std::size_t>(n)];
    for (int j = 0; j < src_gens; ++j) {
        std::vector<Int> img;
        const IntMatrix& fn = f.at(n);
        if (fn.rows() == 0) {
            img.assign(0, Int(0));
        } else {
            img = fn.apply(sd.gens[static_cast<std::size_t>(j)]);
        }
        if (dst_dim == 0) continue;
        std::vector<Int> coords = ht.degrees[static_cast<std::size_t>(n)].classify(img);
        m.set_column(j, coords);
    }
    return m;
}

} // namespace

InducedMap induced_on_homology(const ChainMapZ& f, const ComplexHomology& hs, const ComplexHomology& ht) {
    InducedMap out;
    int top = std::max(hs.top(), ht.top());
    for (int n = 0; n <= top; ++n) {
        out.mats.push_back(induced_matrix_at(f, hs, ht, n));
        out.src_groups.push_back(hs.group(n));
        out.dst_groups.push_back(ht.group(n));
        out.dst_orders.push_back(n <= ht.top() ? ht.degrees[static_cast<std::size_t>(n)].orders
                                               : std::vector<Int>{});
    }
    return out;
}

bool InducedMap::is_identity() const {
    for (std::size_t n = 0; n < mats.size(); ++n) {
        if (!(src_groups[n] == dst_groups[n])) return false;
        if (!mats[n].is_identity()) return false;
    }
    return true;
}

bool InducedMap::is_isomorphism() const {
    for (std::size_t n = 0; n < mats.size(); ++n) {
        if (!(src_groups[n] == dst_groups[n])) return false;
        const IntMatrix& m = mats[n];
        int dim = m.rows();
        if (dim == 0) continue;
        IntMatrix rel(dim, static_cast<int>(dst_orders[n].size()));
        for (int i = 0; i < static_cast<int>(dst_orders[n].size()); ++i) rel(i, i) = dst_orders[n][static_cast<std::size_t>(i)];
        IntMatrix span = IntMatrix::hcat(m, rel);
        // surjective onto Z^dim/relations iff the lattice spanned together
        // with the relations is all of Z^dim
        std::vector<Int> factors = smith_factors(span);
        if (static_cast<int>(factors.size()) < dim) return false;
        for (const auto& x : factors)
            if (x != 1 && x != -1) return false;
    }
    return true;
}

bool SequenceReport::all_exact() const {
    for (const auto& n : nodes)
        if (!n.exact) return false;
    return true;
}

namespace {

// exactness of  A --min--> G --mout--> B  at G, with all maps in class
// coordinates and torsion relations supplied per group
bool exact_at(const IntMatrix& min, const IntMatrix& mout, const IntMatrix& rel_g, const IntMatrix& rel_b) {
    int dim_g = min.rows();
    if (dim_g != mout.cols()) throw std::logic_error("exact_at: dimension mismatch");
    if (dim_g == 0) return true;

    IntMatrix image = IntMatrix::hcat(min, rel_g);

    // kernel of mout as a sublattice of Z^dim_g: solutions x of
    // mout x ≡ 0 (mod rel_b)
    IntMatrix system = IntMatrix::hcat(mout, rel_b);
    IntMatrix ker = integer_kernel(system);
    IntMatrix ker_x(dim_g, ker.cols());
    for (int c = 0; c < ker.cols(); ++c)
        for (int r = 0; r < dim_g; ++r) ker_x(r, c) = ker(r, c);
    IntMatrix kernel = IntMatrix::hcat(ker_x, rel_g);

    return lattices_equal(image, kernel);
}

IntMatrix relations_of(const ComplexHomology& h, int n) {
    if (n < 0 || n > h.top()) return IntMatrix(0, 0);
    return h.degrees[static_cast<std::size_t>(n)].relation_lattice();
}

int coord_dim_of(const ComplexHomology& h, int n) {
    if (n < 0 || n > h.top()) return 0;
    return h.degrees[static_cast<std::size_t>(n)].coord_dim();
}

// connecting map of the pair (K, L): on generators of H_p(K, L), lift, take
// the boundary in K, read off in L, classify in H_{p-1}(L)
IntMatrix connecting_matrix(const ChainComplexZ& ck, const ChainComplexZ& cl, const ChainComplexZ& crel,
                            const ComplexHomology& hrel, const ComplexHomology& hl, int p) {
    int src_gens = p <= hrel.top() ? static_cast<int>(hrel.degrees[static_cast<std::size_t>(p)].gens.size()) : 0;
    int dst_dim = coord_dim_of(hl, p - 1);
    IntMatrix m(dst_dim, src_gens);
    if (src_gens == 0 || dst_dim == 0) return m;
    for (int j = 0; j < src_gens; ++j) {
        const auto& z = hrel.degrees[static_cast<std::size_t>(p)].gens[static_cast<std::size_t>(j)];
        // lift: rel basis labels are a subset of K's
        std::vector<Int> lift(static_cast<std::size_t>(ck.rank(p)), Int(0));
        for (int c = 0; c < crel.rank(p); ++c) {
            if (z[static_cast<std::size_t>(c)] == 0) continue;
            auto idx = ck.basis_index(p, crel.basis[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)]);
            if (!idx) throw std::logic_error("connecting_matrix: missing lift label");
            lift[static_cast<std::size_t>(*idx)] = z[static_cast<std::size_t>(c)];
        }
        std::vector<Int> bd = ck.d(p).apply(lift);
        // read off in L
        std::vector<Int> in_l(static_cast<std::size_t>(cl.rank(p - 1)), Int(0));
        for (int r = 0; r < ck.rank(p - 1); ++r) {
            if (bd[static_cast<std::size_t>(r)] == 0) continue;
            auto idx = cl.basis_index(p - 1, ck.basis[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(r)]);
            if (!idx) throw std::logic_error("connecting_matrix: boundary not supported on the subcomplex");
            in_l[static_cast<std::size_t>(*idx)] = bd[static_cast<std::size_t>(r)];
        }
        m.set_column(j, hl.degrees[static_cast<std::size_t>(p - 1)].classify(in_l));
    }
    return m;
}

} // namespace

PairSequence pair_long_exact_sequence(const SimplicialComplex& k, const SimplexSet& l) {
    if (!k.is_subcomplex(l)) throw std::invalid_argument("pair_long_exact_sequence: not a subcomplex");
    PairSequence out;
    SimplicialComplex lcx = restrict_to(k, l);
    ChainComplexZ cl = chain_complex(lcx);
    ChainComplexZ ck = chain_complex(k);
    ChainComplexZ crel = chain_complex(k, &l);
    out.h_sub = homology(cl);
    out.h_total = homology(ck);
    out.h_rel = homology(crel);

    ChainMapZ inc = inclusion_chain_map(cl, ck);
    ChainMapZ proj = projection_chain_map(ck, crel);
    InducedMap i_star = induced_on_homology(inc, out.h_sub, out.h_total);
    InducedMap j_star = induced_on_homology(proj, out.h_total, out.h_rel);

    int top = std::max({out.h_sub.top(), out.h_total.top(), out.h_rel.top()});
    auto gens_count = [&](const ComplexHomology& h, int n) {
        return n <= h.top() ? static_cast<int>(h.degrees[static_cast<std::size_t>(n)].gens.size()) : 0;
    };
    auto mat_or_zero = [&](const InducedMap& im, int n, int rows, int cols) {
        if (n < static_cast<int>(im.mats.size())) return im.mats[static_cast<std::size_t>(n)];
        return IntMatrix(rows, cols);
    };

    std::vector<IntMatrix> conn(static_cast<std::size_t>(top) + 2);
    for (int p = 0; p <= top + 1; ++p)
        conn[static_cast<std::size_t>(p)] =
            p >= 1 ? connecting_matrix(ck, cl, crel, out.h_rel, out.h_sub, p)
                   : IntMatrix(0, gens_count(out.h_rel, p));

    for (int n = top; n >= 0; --n) {
        IntMatrix i_n = mat_or_zero(i_star, n, coord_dim_of(out.h_total, n), gens_count(out.h_sub, n));
        IntMatrix j_n = mat_or_zero(j_star, n, coord_dim_of(out.h_rel, n), gens_count(out.h_total, n));
        IntMatrix d_n1 = n + 1 <= top + 1 ? conn[static_cast<std::size_t>(n + 1)]
                                          : IntMatrix(coord_dim_of(out.h_sub, n), 0);
        IntMatrix d_n = n >= 1 ? conn[static_cast<std::size_t>(n)] : IntMatrix(0, gens_count(out.h_rel, n));

        // exactness at H_n(L): image of the connecting map from degree n+1
        out.report.nodes.push_back(
            {"H_" + std::to_string(n) + "(L)",
             exact_at(d_n1, i_n, relations_of(out.h_sub, n), relations_of(out.h_total, n))});
        out.report.nodes.push_back(
            {"H_" + std::to_string(n) + "(K)",
             exact_at(i_n, j_n, relations_of(out.h_total, n), relations_of(out.h_rel, n))});
        IntMatrix rel_target = n >= 1 ? relations_of(out.h_sub, n - 1) : IntMatrix(0, 0);
        out.report.nodes.push_back(
            {"H_" + std::to_string(n) + "(K,L)",
             exact_at(j_n, d_n, relations_of(out.h_rel, n), rel_target)});
    }
    return out;
}

MayerVietoris mayer_vietoris(const SimplicialComplex& k, const SimplexSet& k1, const SimplexSet& k2) {
    if (!k.is_subcomplex(k1) || !k.is_subcomplex(k2))
        throw std::invalid_argument("mayer_vietoris: parts are not subcomplexes");
    for (const auto& s : k.simplices())
        if (!k1.count(s) && !k2.count(s))
            throw std::invalid_argument("mayer_vietoris: parts do not cover the complex");

    SimplexSet inter;
    for (const auto& s : k1)
        if (k2.count(s)) inter.insert(s);

    MayerVietoris out;
    ChainComplexZ ca = chain_complex(restrict_to(k, inter));
    ChainComplexZ c1 = chain_complex(restrict_to(k, k1));
    ChainComplexZ c2 = chain_complex(restrict_to(k, k2));
    ChainComplexZ ck = chain_complex(k);
    out.h_inter = homology(ca);
    out.h_a = homology(c1);
    out.h_b = homology(c2);
    out.h_union = homology(ck);

    InducedMap i1 = induced_on_homology(inclusion_chain_map(ca, c1), out.h_inter, out.h_a);
    InducedMap i2 = induced_on_homology(inclusion_chain_map(ca, c2), out.h_inter, out.h_b);
    InducedMap k1m = induced_on_homology(inclusion_chain_map(c1, ck), out.h_a, out.h_union);
    InducedMap k2m = induced_on_homology(inclusion_chain_map(c2, ck), out.h_b, out.h_union);

    int top = std::max({out.h_inter.top(), out.h_a.top(), out.h_b.top(), out.h_union.top()});

    auto gens_count = [&](const ComplexHomology& h, int n) {
        return n <= h.top() ? static_cast<int>(h.degrees[static_cast<std::size_t>(n)].gens.size()) : 0;
    };
    auto mat_of = [&](const InducedMap& im, int n, int rows, int cols) {
        if (n < static_cast<int>(im.mats.size())) return im.mats[static_cast<std::size_t>(n)];
        return IntMatrix(rows, cols);
    };

    // connecting map: split a cycle of K into a K1-part and the rest (in K2)
    auto connecting = [&](int n) -> IntMatrix {
        int src_gens = gens_count(out.h_union, n);
        int dst_dim = coord_dim_of(out.h_inter, n - 1);
        IntMatrix m(dst_dim, src_gens);
        if (src_gens == 0 || dst_dim == 0 || n < 1) return m;
        for (int j = 0; j < src_gens; ++j) {
            const auto& z = out.h_union.degrees[static_cast<std::size_t>(n)].gens[static_cast<std::size_t>(j)];
            std::vector<Int> part_a(static_cast<std::size_t>(ck.rank(n)), Int(0));
            for (int c = 0; c < ck.rank(n); ++c) {
                if (z[static_cast<std::size_t>(c)] == 0) continue;
                // membership of the basis simplex in K1 decides the split
                const std::string& label = ck.basis[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)];
                if (c1.basis_index(n, label))
                    part_a[static_cast<std::size_t>(c)] = z[static_cast<std::size_t>(c)];
            }
            std::vector<Int> bd = ck.d(n).apply(part_a);
            std::vector<Int> in_inter(static_cast<std::size_t>(ca.rank(n - 1)), Int(0));
            for (int r = 0; r < ck.rank(n - 1); ++r) {
                if (bd[static_cast<std::size_t>(r)] == 0) continue;
                auto idx = ca.basis_index(n - 1, ck.basis[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(r)]);
                if (!idx) throw std::logic_error("mayer_vietoris: boundary of split not in the intersection");
                in_inter[static_cast<std::size_t>(*idx)] = bd[static_cast<std::size_t>(r)];
            }
            m.set_column(j, out.h_inter.degrees[static_cast<std::size_t>(n - 1)].classify(in_inter));
        }
        return m;
    };

    std::vector<IntMatrix> conn(static_cast<std::size_t>(top) + 2);
    for (int n = 1; n <= top + 1; ++n) conn[static_cast<std::size_t>(n)] = connecting(n);

    for (int n = top; n >= 0; --n) {
        int dim_ab = coord_dim_of(out.h_a, n) + coord_dim_of(out.h_b, n);

        // alpha: H(A∩B) -> H(K1) ⊕ H(K2), x -> (x, x)
        IntMatrix m1 = mat_of(i1, n, coord_dim_of(out.h_a, n), gens_count(out.h_inter, n));
        IntMatrix m2 = mat_of(i2, n, coord_dim_of(out.h_b, n), gens_count(out.h_inter, n));
        IntMatrix alpha(dim_ab, gens_count(out.h_inter, n));
        for (int c = 0; c < alpha.cols(); ++c) {
            for (int r = 0; r < m1.rows(); ++r) alpha(r, c) = m1(r, c);
            for (int r = 0; r < m2.rows(); ++r) alpha(m1.rows() + r, c) = m2(r, c);
        }

        // beta: (a, b) -> a - b in H(K). Columns of beta are images of the
        // ⊕-group generators, i.e. generators of H(K1) then of H(K2).
        IntMatrix b1 = mat_of(k1m, n, coord_dim_of(out.h_union, n), gens_count(out.h_a, n));
        IntMatrix b2 = mat_of(k2m, n, coord_dim_of(out.h_union, n), gens_count(out.h_b, n));
        IntMatrix beta(coord_dim_of(out.h_union, n), gens_count(out.h_a, n) + gens_count(out.h_b, n));
        for (int c = 0; c < b1.cols(); ++c)
            for (int r = 0; r < b1.rows(); ++r) beta(r, c) = b1(r, c);
        for (int c = 0; c < b2.cols(); ++c)
            for (int r = 0; r < b2.rows(); ++r) beta(r, b1.cols() + c) = -b2(r, c);

        IntMatrix d_n1 = n + 1 <= top + 1 ? conn[static_cast<std::size_t>(n + 1)]
                                          : IntMatrix(coord_dim_of(out.h_inter, n), 0);
        IntMatrix d_n = n >= 1 ? conn[static_cast<std::size_t>(n)] : IntMatrix(0, gens_count(out.h_union, n));

        IntMatrix rel_ab(dim_ab, 0);
        {
            IntMatrix ra = relations_of(out.h_a, n), rb = relations_of(out.h_b, n);
            rel_ab = IntMatrix(dim_ab, ra.cols() + rb.cols());
            for (int c = 0; c < ra.cols(); ++c)
                for (int r = 0; r < ra.rows(); ++r) rel_ab(r, c) = ra(r, c);
            for (int c = 0; c < rb.cols(); ++c)
                for (int r = 0; r < rb.rows(); ++r) rel_ab(ra.rows() + r, ra.cols() + c) = rb(r, c);
        }

        out.report.nodes.push_back(
            {"H_" + std::to_string(n) + "(A∩B)",
             exact_at(d_n1, alpha, relations_of(out.h_inter, n), rel_ab)});
        out.report.nodes.push_back(
            {"H_" + std::to_string(n) + "(K1)⊕H_" + std::to_string(n) + "(K2)",
             exact_at(alpha, beta, rel_ab, relations_of(out.h_union, n))});
        IntMatrix rel_target = n >= 1 ? relations_of(out.h_inter, n - 1) : IntMatrix(0, 0);
        out.report.nodes.push_back(
            {"H_" + std::to_string(n) + "(K)", exact_at(beta, d_n, relations_of(out.h_union, n), rel_target)});
    }
    return out;
}

ChainComplexZ cellular_chain_complex(const FiniteSimplicialSet& x) {
    int top = x.top_dim();
    ChainComplexZ cell;
    if (top < 0) {
        cell.basis.push_back({});
        cell.boundary.push_back(IntMatrix(0, 0));
        return cell;
    }

    // skeleton generator sets
    auto skel_gens = [&](int n) {
        std::set<int> s;
        for (int g = 0; g < x.generator_count(); ++g)
            if (x.generator(g).dim <= n) s.insert(g);
        return s;
    };

    std::vector<std::set<int>> skel(static_cast<std::size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) skel[static_cast<std::size_t>(n)] = skel_gens(n);

    // X^n as standalone simplicial sets share generator ids with X, so chain
    // complexes can be built with the rel mechanism directly on X
    std::vector<ChainComplexZ> c_skel(static_cast<std::size_t>(top) + 1);     // C(X^n)
    std::vector<ChainComplexZ> c_pair(static_cast<std::size_t>(top) + 1);     // C(X^n, X^{n-1})
    std::vector<ComplexHomology> h_skel(static_cast<std::size_t>(top) + 1);   // H(X^n)
    std::vector<ComplexHomology> h_pair(static_cast<std::size_t>(top) + 1);   // H(X^n, X^{n-1})

    auto truncate = [&](const ChainComplexZ& c, int n) {
        // chains of the n-skeleton = chains of X in degrees <= n
        ChainComplexZ t;
        for (int d = 0; d <= std::min(n, c.top_degree()); ++d) {
            t.basis.push_back(c.basis[static_cast<std::size_t>(d)]);
            t.boundary.push_back(c.boundary[static_cast<std::size_t>(d)]);
        }
        return t;
    };

    ChainComplexZ full = chain_complex(x);
    for (int n = 0; n <= top; ++n) {
        c_skel[static_cast<std::size_t>(n)] = truncate(full, n);
        std::set<int> prev = n >= 1 ? skel[static_cast<std::size_t>(n - 1)] : std::set<int>{};
        // relative chains of (X^n, X^{n-1}) are concentrated in degree n
        ChainComplexZ rel;
        for (int d = 0; d <= n; ++d) {
            if (d < n) {
                rel.basis.push_back({});
                rel.boundary.push_back(IntMatrix(0, 0));
            } else {
                std::vector<std::string> labels;
                for (int g : x.generators_of_dim(n)) labels.push_back(x.generator(g).label);
                rel.basis.push_back(labels);
                rel.boundary.push_back(IntMatrix(0, static_cast<int>(labels.size())));
            }
        }
        c_pair[static_cast<std::size_t>(n)] = std::move(rel);
        h_skel[static_cast<std::size_t>(n)] = homology(c_skel[static_cast<std::size_t>(n)]);
        h_pair[static_cast<std::size_t>(n)] = homology(c_pair[static_cast<std::size_t>(n)]);
    }

    // degree-n cellular basis: SNF generators of H_n(X^n, X^{n-1}); with the
    // concentrated relative complex these are free classes, one per cell,
    // but the boundary below is still computed through the homology route
    for (int n = 0; n <= top; ++n) {
        std::vector<std::string> labels;
        const auto& deg = h_pair[static_cast<std::size_t>(n)].degrees[static_cast<std::size_t>(n)];
        if (!deg.orders.empty()) throw std::logic_error("cellular: relative homology not free");
        for (std::size_t j = 0; j < deg.gens.size(); ++j) labels.push_back("e" + std::to_string(n) + "_" + std::to_string(j));
        cell.basis.push_back(labels);
    }

    for (int n = 0; n <= top; ++n) {
        int rows = n == 0 ? 0 : static_cast<int>(cell.basis[static_cast<std::size_t>(n - 1)].size());
        int cols = static_cast<int>(cell.basis[static_cast<std::size_t>(n)].size());
        IntMatrix d(rows, cols);
        if (n >= 1 && rows > 0 && cols > 0) {
            const auto& deg_n = h_pair[static_cast<std::size_t>(n)].degrees[static_cast<std::size_t>(n)];
            const auto& h_prev = h_skel[static_cast<std::size_t>(n - 1)];

            // projection C(X^{n-1}) -> C(X^{n-1}, X^{n-2}) induced on homology
            ChainMapZ proj;
            proj.src = c_skel[static_cast<std::size_t>(n - 1)];
            proj.dst = c_pair[static_cast<std::size_t>(n - 1)];
            for (int dd = 0; dd <= std::max(proj.src.top_degree(), proj.dst.top_degree()); ++dd)
                proj.mats.push_back(label_matrix(proj.src, proj.dst, dd, false));
            InducedMap proj_star = induced_on_homology(proj, h_prev, h_pair[static_cast<std::size_t>(n - 1)]);
            const IntMatrix& pm = proj_star.mats[static_cast<std::size_t>(n - 1)];

            for (int j = 0; j < cols; ++j) {
                // connecting map: lift the relative class, bound in C(X^n)
                const auto& z = deg_n.gens[static_cast<std::size_t>(j)];
                std::vector<Int> lift(static_cast<std::size_t>(c_skel[static_cast<std::size_t>(n)].rank(n)), Int(0));
                for (int c = 0; c < c_pair[static_cast<std::size_t>(n)].rank(n); ++c) {
                    if (z[static_cast<std::size_t>(c)] == 0) continue;
                    auto idx = c_skel[static_cast<std::size_t>(n)].basis_index(
                        n, c_pair[static_cast<std::size_t>(n)].basis[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)]);
                    if (!idx) throw std::logic_error("cellular: lift label missing");
                    lift[static_cast<std::size_t>(*idx)] = z[static_cast<std::size_t>(c)];
                }
                std::vector<Int> bd = c_skel[static_cast<std::size_t>(n)].d(n).apply(lift);
                std::vector<Int> h_coords = h_prev.degrees[static_cast<std::size_t>(n - 1)].classify(bd);
                std::vector<Int> cell_coords = pm.apply(h_coords);
                d.set_column(j, cell_coords);
            }
        }
        cell.boundary.push_back(std::move(d));
    }
    cell.validate();
    return cell;
}

namespace {

// signed canonical form of an oriented simplex given as a vertex id list
std::pair<Simplex, int> canonicalize(const std::vector<int>& verts) {
    Simplex s = verts;
    int sign = 1;
    // insertion sort, counting swaps
    for (std::size_t i = 1; i < s.size(); ++i)
        for (std::size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
            std::swap(s[j - 1], s[j]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] == s[i]) return {Simplex{}, 0};
    return {s, sign};
}

} // namespace

ChainMapZ sd_chain_map(const SimplicialComplex& k) {
    Subdivision sub = subdivide_with_map(k);
    ChainComplexZ ck = chain_complex(k);
    ChainComplexZ csd = chain_complex(sub.sd);

    std::map<Simplex, int> sd_id; // simplex of K -> sd vertex
    for (int v = 0; v < sub.sd.vertex_count(); ++v) sd_id[sub.vertex_simplex[static_cast<std::size_t>(v)]] = v;

    using Chain = std::map<Simplex, Int>; // canonical sd simplices -> coeff
    std::map<Simplex, Chain> memo;

    std::function<const Chain&(const Simplex&)> sd_of = [&](const Simplex& s) -> const Chain& {
        auto it = memo.find(s);
        if (it != memo.end()) return it->second;
        Chain out;
        if (s.size() == 1) {
            out[{sd_id[s]}] = 1;
        } else {
            int b = sd_id[s];
            Simplex face;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                face.clear();
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop) face.push_back(s[i]);
                int face_sign = (drop % 2 == 0) ? 1 : -1;
                for (const auto& [tau, coeff] : sd_of(face)) {
                    // cone: prepend the barycenter; it has the largest sd
                    // index, so the canonical (sorted) form appends it with
                    // sign (-1)^{|tau|}
                    Simplex coned = tau;
                    coned.push_back(b);
                    int sign = (tau.size() % 2 == 0) ? 1 : -1;
                    out[coned] += face_sign * sign * coeff;
                }
            }
            for (auto it2 = out.begin(); it2 != out.end();)
                it2 = it2->second == 0 ? out.erase(it2) : std::next(it2);
        }
        return memo.emplace(s, std::move(out)).first->second;
    };

    ChainMapZ f;
    f.src = ck;
    f.dst = csd;
    for (int n = 0; n <= ck.top_degree(); ++n) {
        IntMatrix m(csd.rank(n), ck.rank(n));
        for (const auto& s : k.simplices()) {
            if (static_cast<int>(s.size()) != n + 1) continue;
            auto idx = ck.basis_index(n, complex_simplex_label(k, s));
            for (const auto& [tau, coeff] : sd_of(s)) {
                auto ridx = csd.basis_index(n, complex_simplex_label(sub.sd, tau));
                if (!ridx) throw std::logic_error("sd_chain_map: image simplex missing");
                m(*ridx, *idx) = coeff;
            }
        }
        f.mats.push_back(std::move(m));
    }
    f.validate();
    return f;
}

ChainMapZ last_vertex_map(const SimplicialComplex& k) {
    Subdivision sub = subdivide_with_map(k);
    ChainComplexZ csd = chain_complex(sub.sd);
    ChainComplexZ ck = chain_complex(k);

    ChainMapZ f;
    f.src = csd;
    f.dst = ck;
    for (int n = 0; n <= csd.top_degree(); ++n) {
        IntMatrix m(ck.rank(n), csd.rank(n));
        for (const auto& s : sub.sd.simplices()) {
            if (static_cast<int>(s.size()) != n + 1) continue;
            auto cidx = csd.basis_index(n, complex_simplex_label(sub.sd, s));
            std::vector<int> images;
            for (int v : s) images.push_back(sub.vertex_simplex[static_cast<std::size_t>(v)].back());
            auto [canon, sign] = canonicalize(images);
            if (sign == 0) continue; // degenerate image
            auto ridx = ck.basis_index(n, complex_simplex_label(k, canon));
            if (!ridx) throw std::logic_error("last_vertex_map: image simplex missing");
            m(*ridx, *cidx) = sign;
        }
        f.mats.push_back(std::move(m));
    }
    f.validate();
    return f;
}

ChainComplexZ direct_sum(const ChainComplexZ& a, const ChainComplexZ& b) {
    ChainComplexZ c;
    int top = std::max(a.top_degree(), b.top_degree());
    for (int n = 0; n <= top; ++n) {
        std::vector<std::string> labels;
        for (int i = 0; i < a.rank(n); ++i) labels.push_back("A." + a.basis[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]);
        for (int i = 0; i < b.rank(n); ++i) labels.push_back("B." + b.basis[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]);
        c.basis.push_back(std::move(labels));
        IntMatrix da = n <= a.top_degree() ? a.d(n) : IntMatrix(a.rank(n - 1), 0);
        IntMatrix db = n <= b.top_degree() ? b.d(n) : IntMatrix(b.rank(n - 1), 0);
        int rows = n == 0 ? 0 : static_cast<int>(c.basis[static_cast<std::size_t>(n - 1)].size());
        IntMatrix dd(rows, static_cast<int>(c.basis[static_cast<std::size_t>(n)].size()));
        int ra = n >= 1 ? a.rank(n - 1) : 0;
        for (int col = 0; col < da.cols(); ++col)
            for (int r = 0; r < da.rows(); ++r) dd(r, col) = da(r, col);
        for (int col = 0; col < db.cols(); ++col)
            for (int r = 0; r < db.rows(); ++r) dd(ra + r, da.cols() + col) = db(r, col);
        c.boundary.push_back(std::move(dd));
    }
    return c;
}

} // namespace simptop
