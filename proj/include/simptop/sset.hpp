#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simptop/complex.hpp"

namespace simptop {

/// A simplex of a finite simplicial set: a nondegenerate generator together
/// with a degeneracy word s_{i1} s_{i2} ... s_{ir}, i1 > i2 > ... > ir
/// (outermost first). The empty word is the generator itself.
struct SSimplex {
    int gen = -1;
    std::vector<int> word;

    bool degenerate() const { return !word.empty(); }
    bool operator==(const SSimplex& o) const { return gen == o.gen && word == o.word; }
    bool operator<(const SSimplex& o) const { return std::tie(gen, word) < std::tie(o.gen, o.word); }
};

/// Finite simplicial set presented by its nondegenerate generators and their
/// faces. Construction checks the simplicial identities d_i d_j = d_{j-1} d_i
/// (i < j) on every generator.
class FiniteSimplicialSet {
public:
    struct Generator {
        int dim = 0;
        std::vector<SSimplex> faces; // dim+1 entries for dim >= 1, empty for dim 0
        std::string label;
    };

    static FiniteSimplicialSet make(std::vector<Generator> gens);

    int generator_count() const { return static_cast<int>(gens_.size()); }
    const Generator& generator(int g) const { return gens_[static_cast<std::size_t>(g)]; }
    int dim_of(const SSimplex& s) const {
        return gens_[static_cast<std::size_t>(s.gen)].dim + static_cast<int>(s.word.size());
    }
    int top_dim() const;

    /// i-th face of an arbitrary simplex, via the simplicial identities.
    SSimplex face(const SSimplex& s, int i) const;

    /// j-th degeneracy, normalized.
    static SSimplex degenerate(const SSimplex& s, int j);

    /// All simplices (degenerate included) of dimension p.
    std::vector<SSimplex> simplices_of_dim(int p) const;

    /// Nondegenerate generator count per dimension (index = dimension).
    std::vector<long long> nondegenerate_counts() const;

    std::vector<int> generators_of_dim(int d) const;

    std::string describe(const SSimplex& s) const;

private:
    std::vector<Generator> gens_;
};

/// One n-cell per nondegenerate n-simplex, with its attaching faces (all of
/// which live in the (n-1)-skeleton).
struct SkeletalFiltration {
    struct Cell {
        int gen;
        std::vector<SSimplex> faces;
    };
    std::vector<std::vector<Cell>> cells_by_dim;
    std::vector<long long> cell_counts() const;
};

SkeletalFiltration skeletal_filtration(const FiniteSimplicialSet& x);

/// A simplicial complex with its fixed vertex order, as a simplicial set:
/// one nondegenerate generator per simplex, faces by vertex deletion.
FiniteSimplicialSet from_ordered_complex(const SimplicialComplex& k);

/// Finite small category: objects, named non-identity arrows, and a
/// composition table. Identities are implicit. Morphism encoding: id(k) for
/// objects, arrow(k) for table arrows.
class SmallCategory {
public:
    struct Morphism {
        bool is_id;
        int index; // object for identities, arrow otherwise
        bool operator==(const Morphism& o) const { return is_id == o.is_id && index == o.index; }
    };
    static Morphism id_of(int obj) { return {true, obj}; }
    static Morphism arrow_of(int a) { return {false, a}; }

    struct Arrow {
        std::string name;
        int src, tgt;
    };

    /// compose_table[g][f] = g ∘ f for each composable pair of non-identity
    /// arrows; checked for associativity on construction.
    static SmallCategory make(std::vector<std::string> objects, std::vector<Arrow> arrows,
                              std::vector<std::tuple<int, int, Morphism>> composites);

    int object_count() const { return static_cast<int>(objects_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::string& object_name(int i) const { return objects_[static_cast<std::size_t>(i)]; }
    const Arrow& arrow(int i) const { return arrows_[static_cast<std::size_t>(i)]; }

    int src(Morphism m) const { return m.is_id ? m.index : arrows_[static_cast<std::size_t>(m.index)].src; }
    int tgt(Morphism m) const { return m.is_id ? m.index : arrows_[static_cast<std::size_t>(m.index)].tgt; }

    Morphism compose(Morphism g, Morphism f) const; // g after f

    /// Longest composable chain of non-identity arrows; throws if the arrow
    /// graph has a cycle (the nerve would then be infinite-dimensional).
    int longest_chain() const;

    /// Poset category of a strict order relation given as edges i -> j.
    static SmallCategory poset(std::vector<std::string> objects, const std::vector<std::pair<int, int>>& less);

private:
    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<std::optional<Morphism>>> comp_; // [g][f]
};

/// Nerve of a small category as a finite simplicial set: n-simplices are
/// length-n composable chains; nondegenerate ones contain no identity.
/// `max_dim` bounds the generators; by default the longest chain is used
/// (requires an acyclic arrow graph).
FiniteSimplicialSet nerve_category(const SmallCategory& c, std::optional<int> max_dim = std::nullopt);

/// Horn-filler query: faces of a would-be p-simplex, all but the k-th.
/// Assignment entries other than k must be present and mutually compatible
/// (d_i F_j = d_{j-1} F_i); otherwise the query is rejected with the violated
/// identity. Returns every p-simplex of X (degenerate or not) matching the
/// assigned faces.
std::vector<SSimplex> horn_fillers(const FiniteSimplicialSet& x, int p, int k,
                                   const std::vector<std::optional<SSimplex>>& assignment);

} // namespace simptop
