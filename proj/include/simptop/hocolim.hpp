#pragma once

#include <map>
#include <string>
#include <vector>

#include "simptop/complex.hpp"
#include "simptop/homology.hpp"
#include "simptop/sset.hpp"

namespace simptop {

/// Poset of index subsets with nonempty intersection, ordered by reverse
/// inclusion, together with the intersection subcomplexes.
struct CoverDiagram {
    Cover cover;
    std::vector<std::vector<int>> objects; // sorted part-index subsets
    std::map<std::vector<int>, int> object_id;
    std::vector<SimplexSet> intersections; // per object

    std::string object_label(int id) const;
};

CoverDiagram cover_diagram(const Cover& cover);

/// The category whose objects are the nonempty-intersection index subsets and
/// whose morphisms are the reverse inclusions.
SmallCategory ru_category(const Cover& cover);

/// Normalized chains of the nerve of ru_category(cover).
ChainComplexZ bru_chain_complex(const Cover& cover);

/// Explicit degreewise basis bijection (with signs) between
/// bru_chain_complex(cover) and the chains of sd(nerve_of_cover(cover)).
struct BruIsomorphism {
    ChainComplexZ bru;
    ChainComplexZ sd_nerve;
    std::vector<IntMatrix> mats; // signed permutation matrices per degree

    /// Exact check that the bijection intertwines the boundaries.
    bool commutes() const;
};
BruIsomorphism bru_isomorphism(const Cover& cover);

/// Double complex of a covering cover: bidegree (p,q) basis consists of pairs
/// (strict descending chain of p+1 poset objects, q-simplex of the
/// intersection at the chain top). The horizontal differential deletes chain
/// entries (deleting the top pushes the coefficient along the inclusion of
/// intersections); the vertical one is (-1)^p times the simplicial boundary.
class BlowupComplex {
public:
    struct Cell {
        int chain;   // id into chain_table
        int simplex; // id into simplex_table
    };

    static BlowupComplex build(const Cover& cover);

    const CoverDiagram& diagram() const { return diagram_; }
    const std::vector<std::vector<int>>& chain_table() const { return chain_table_; }
    const std::vector<Simplex>& simplex_table() const { return simplex_table_; }

    int max_chain_len() const { return max_chain_len_; } // number of entries, = p+1
    int base_dim() const;

    const std::vector<Cell>& cells(int p, int q) const;
    long long total_cells() const;

    /// Horizontal differential (p,q) -> (p-1,q), unsigned alternating sum.
    IntMatrix horizontal(int p, int q) const;
    /// Vertical differential (p,q) -> (p,q-1), already carrying the (-1)^p.
    IntMatrix vertical(int p, int q) const;

    /// Assembled total complex with labelled basis (dense; small covers).
    ChainComplexZ total_complex() const;

    /// Homology of the total complex via sparse unit-pivot reduction.
    std::vector<HomologyGroup> total_homology_sparse() const;

    std::string cell_label(const Cell& c) const;

    /// Sparse total boundary matrices, and the sparse projection-to-base
    /// matrices used by the mapping-cone route.
    SparseMatrix sparse_total_boundary(int n) const;
    int total_rank(int n) const;
    int top_total_degree() const;

private:
    CoverDiagram diagram_;
    std::vector<std::vector<int>> chain_table_; // descending object ids, top first
    std::map<std::vector<int>, int> chain_id_;
    std::vector<Simplex> simplex_table_;
    std::map<Simplex, int> simplex_id_;
    int max_chain_len_ = 0;
    std::map<std::pair<int, int>, std::vector<Cell>> cells_;
    std::map<std::pair<int, int>, std::map<std::pair<int, int>, int>> index_;

    friend struct BlowupMaps;
    int cell_index(int p, int q, int chain, int simplex) const;
    std::vector<std::pair<Cell, int>> d_h_of(int p, int q, const Cell& c) const; // (target cell, coeff)
    std::vector<std::pair<Cell, int>> d_v_of(int p, int q, const Cell& c) const;
};

/// Chain map from the dense total complex to the chains of the base:
/// identity on the (0,q) summands, zero elsewhere.
ChainMapZ projection_to_base(const BlowupComplex& b);

/// Desk-scale verification that the projection is a homology isomorphism.
struct SegalReport {
    bool pass = false;
    std::vector<HomologyGroup> total_groups, base_groups;
    std::vector<IntMatrix> induced; // present on the dense route only
    std::string route;              // "dense" or "sparse-cone"
    std::string detail;
};
SegalReport verify_segal(const Cover& cover, long long dense_cell_limit = 4000);

} // namespace simptop
