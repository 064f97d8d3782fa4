#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simptop/complex.hpp"
#include "simptop/matrix.hpp"
#include "simptop/sset.hpp"

namespace simptop {

/// Nonnegatively graded chain complex of free Z-modules with labelled bases.
/// boundary[n] maps degree n to degree n-1 (boundary[0] has zero rows).
struct ChainComplexZ {
    std::vector<std::vector<std::string>> basis;
    std::vector<IntMatrix> boundary;

    int top_degree() const { return static_cast<int>(basis.size()) - 1; }
    int rank(int n) const {
        return (n >= 0 && n <= top_degree()) ? static_cast<int>(basis[static_cast<std::size_t>(n)].size()) : 0;
    }
    const IntMatrix& d(int n) const { return boundary[static_cast<std::size_t>(n)]; }

    std::optional<int> basis_index(int n, const std::string& label) const;

    /// Shape consistency and exact d∘d = 0.
    void validate() const;

    bool operator==(const ChainComplexZ& o) const { return basis == o.basis && boundary == o.boundary; }
};

/// Normalized chains of a simplicial complex, relative to an optional
/// subcomplex. Basis labels are the complex's simplex labels.
ChainComplexZ chain_complex(const SimplicialComplex& k, const SimplexSet* rel = nullptr);

/// Normalized chains of a finite simplicial set: basis = nondegenerate
/// generators, boundary drops degenerate faces. `rel` is a face-closed set of
/// generator ids.
ChainComplexZ chain_complex(const FiniteSimplicialSet& x, const std::set<int>* rel = nullptr);

std::string complex_simplex_label(const SimplicialComplex& k, const Simplex& s);

/// Free rank plus torsion invariant factors d_1 | d_2 | ..., each > 1.
struct HomologyGroup {
    long long free_rank = 0;
    std::vector<Int> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
    std::string to_string() const;
};

/// Homology of one degree with SNF-derived generator data. Generators are
/// ordered torsion-first (aligned with `orders`), then free.
struct HomologyDegree {
    HomologyGroup group;
    std::vector<std::vector<Int>> gens; // chains in C_n
    std::vector<Int> orders;            // size = torsion count

    int coord_dim() const { return static_cast<int>(orders.size()) + static_cast<int>(group.free_rank); }

    // reduction data: cycle -> class coordinates
    IntMatrix v_inv1;           // from SNF of d_n
    int rank1 = 0;              // rank d_n
    IntMatrix u2;               // from SNF of image coordinates
    std::vector<Int> factors2;  // invariant factors including 1s
    int rank2 = 0;

    /// Coordinates of a cycle's class: torsion coords reduced mod order.
    /// Throws if z is not a cycle.
    std::vector<Int> classify(const std::vector<Int>& z) const;

    /// The relation lattice of the presentation (order * e_i columns).
    IntMatrix relation_lattice() const;
};

struct ComplexHomology {
    std::vector<HomologyDegree> degrees;

    const HomologyGroup& group(int n) const;
    std::vector<HomologyGroup> graded() const;
    int top() const { return static_cast<int>(degrees.size()) - 1; }
};

/// Full homology with generators, exact integer arithmetic throughout.
ComplexHomology homology(const ChainComplexZ& c);

/// Groups only (no generators), using sparse unit-pivot elimination first.
/// Suitable for complexes too large for dense SNF. boundaries[n] maps degree
/// n to degree n-1; dims[n] is the rank of C_n.
std::vector<HomologyGroup> homology_groups_from_sparse(const std::vector<long long>& dims,
                                                       std::vector<SparseMatrix> boundaries);
std::vector<HomologyGroup> homology_groups_sparse(const ChainComplexZ& c);

bool graded_groups_equal(const std::vector<HomologyGroup>& a, const std::vector<HomologyGroup>& b);

/// Degreewise integer matrices commuting exactly with the boundaries.
struct ChainMapZ {
    ChainComplexZ src;
    ChainComplexZ dst;
    std::vector<IntMatrix> mats; // mats[n]: C_n(src) -> C_n(dst)

    const IntMatrix& at(int n) const;
    void validate() const; // shapes and exact d f = f d
};

/// Label-matching inclusion/projection chain maps.
ChainMapZ inclusion_chain_map(const ChainComplexZ& sub, const ChainComplexZ& whole);
ChainMapZ projection_chain_map(const ChainComplexZ& whole, const ChainComplexZ& quotient);
ChainMapZ identity_chain_map(const ChainComplexZ& c);
ChainMapZ compose(const ChainMapZ& g, const ChainMapZ& f);

/// Matrix of H_n(f) in the SNF generator bases, one per degree, together with
/// the group data needed to interpret the torsion rows (which are reduced mod
/// their orders).
struct InducedMap {
    std::vector<IntMatrix> mats; // target coords x source gens
    std::vector<HomologyGroup> src_groups, dst_groups;
    std::vector<std::vector<Int>> dst_orders; // per degree, torsion orders

    bool is_identity() const;
    bool is_isomorphism() const;
};

InducedMap induced_on_homology(const ChainMapZ& f, const ComplexHomology& hs, const ComplexHomology& ht);

/// One exactness node: the subgroup im(f) of the middle group versus ker(g).
struct ExactnessNode {
    std::string at;
    bool exact = false;
};

struct SequenceReport {
    std::vector<ExactnessNode> nodes;
    bool all_exact() const;
};

/// ... -> H_p(L) -> H_p(K) -> H_p(K,L) -> H_{p-1}(L) -> ..., with the
/// connecting map realized by lift / boundary / project on SNF generators.
/// Exactness compared as subgroups, no tolerance.
struct PairSequence {
    ComplexHomology h_sub, h_total, h_rel;
    SequenceReport report;
};
PairSequence pair_long_exact_sequence(const SimplicialComplex& k, const SimplexSet& l);

/// Mayer-Vietoris of a two-part cover K = K1 ∪ K2.
struct MayerVietoris {
    ComplexHomology h_inter, h_a, h_b, h_union;
    SequenceReport report;
};
MayerVietoris mayer_vietoris(const SimplicialComplex& k, const SimplexSet& k1, const SimplexSet& k2);

/// Cellular chain complex of a finite simplicial set: degree-n basis is the
/// SNF generator basis of H_n(X^n, X^{n-1}); the boundary is the composite of
/// the pair-sequence connecting map with the projection-induced map. The
/// construction routes through relative homology computations rather than
/// the face formula, so it is an independent second route to H_*(X).
ChainComplexZ cellular_chain_complex(const FiniteSimplicialSet& x);

/// Subdivision chain map C(K) -> C(sd K), by the cone recursion on the
/// barycenter of each simplex.
ChainMapZ sd_chain_map(const SimplicialComplex& k);

/// Simplicial last-vertex projection sd K -> K, linearized on chains.
ChainMapZ last_vertex_map(const SimplicialComplex& k);

/// Direct sum, for additivity checks.
ChainComplexZ direct_sum(const ChainComplexZ& a, const ChainComplexZ& b);

} // namespace simptop
