#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace simptop {

/// A simplex as a strictly increasing list of vertex indices.
using Simplex = std::vector<int>;
using SimplexSet = std::set<Simplex>;

/// Finite abstract simplicial complex. Vertices are opaque named identifiers
/// whose total order is fixed at construction; simplices are stored as sorted
/// index vectors and the set is kept downward closed.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Build from named vertices (order-defining) and simplices given by
    /// vertex names. Faces are completed automatically. Every vertex in
    /// `vertex_order` becomes part of the complex even if it appears in no
    /// listed simplex (as an isolated point).
    static SimplicialComplex make(std::vector<std::string> vertex_order,
                                  const std::vector<std::vector<std::string>>& simplices_by_name);

    /// Build from index simplices over n unnamed vertices "0".."n-1".
    static SimplicialComplex from_index_simplices(int n_vertices, const std::vector<Simplex>& simplices);

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    const std::string& vertex_name(int i) const { return vertex_names_[static_cast<std::size_t>(i)]; }
    std::optional<int> vertex_index(const std::string& name) const;

    const SimplexSet& simplices() const { return simplices_; }
    bool contains(const Simplex& s) const { return simplices_.count(s) > 0; }
    bool empty() const { return simplices_.empty(); }

    int dim() const;
    std::vector<long long> f_vector() const;
    long long euler_characteristic() const;
    std::vector<Simplex> simplices_of_dim(int d) const;
    std::vector<Simplex> maximal_simplices() const;

    /// All simplices of dimension <= p.
    SimplexSet skeleton(int p) const;

    /// Is `sub` a downward-closed family of simplices of this complex?
    bool is_subcomplex(const SimplexSet& sub) const;

    /// Closed star of a vertex: subcomplex generated by simplices containing it.
    SimplexSet closed_star(int vertex) const;

    /// Downward closure of an arbitrary simplex family.
    static SimplexSet close_down(const SimplexSet& generators);

    bool operator==(const SimplicialComplex& o) const {
        return vertex_names_ == o.vertex_names_ && simplices_ == o.simplices_;
    }

private:
    std::vector<std::string> vertex_names_;
    std::map<std::string, int> vertex_index_;
    SimplexSet simplices_;
};

/// Indexed family of subcomplexes of a base complex. Parts live over the
/// base's vertex indexing.
struct Cover {
    SimplicialComplex base;
    std::vector<std::pair<std::string, SimplexSet>> parts;

    /// Throws if a part is not a subcomplex of the base.
    void validate() const;

    /// Does every simplex of the base lie in at least one part?
    bool is_covering() const;

    const SimplexSet& part(int i) const { return parts[static_cast<std::size_t>(i)].second; }
    const std::string& part_name(int i) const { return parts[static_cast<std::size_t>(i)].first; }
    int part_count() const { return static_cast<int>(parts.size()); }

    /// Intersection of the listed parts (empty selection = all of base).
    SimplexSet intersection(const std::vector<int>& part_ids) const;
};

/// The full complex on vertices {0, ..., p}.
SimplicialComplex standard_complex(int p);

/// Boundary of the standard complex (proper faces only); empty for p = 0.
SimplicialComplex standard_boundary(int p);

/// Barycentric subdivision. Vertices of the result are the simplices of K,
/// ordered by (dimension, then lexicographic vertex list); simplices are the
/// strict chains of faces.
SimplicialComplex subdivide(const SimplicialComplex& k);

/// Subdivision together with the table mapping each sd-vertex back to the
/// simplex of K it stands for.
struct Subdivision {
    SimplicialComplex sd;
    std::vector<Simplex> vertex_simplex;
};
Subdivision subdivide_with_map(const SimplicialComplex& k);

/// Name assigned by subdivide() to the vertex representing simplex s of K.
std::string subdivision_vertex_name(const SimplicialComplex& k, const Simplex& s);

/// Cone: one fresh apex joined to everything. cone(empty) is a single point.
SimplicialComplex cone(const SimplicialComplex& k);

/// A complex together with named distinguished subcomplexes.
struct TaggedComplex {
    SimplicialComplex cx;
    std::map<std::string, SimplexSet> tags;
};

/// Triangulated prism over the standard p-simplex whose "top" boundary is a
/// copy of the p-simplex and whose "bottom" is its k-fold subdivision, built
/// by the iterated cone construction (one cone level per subdivision step).
/// For k = 0 the staircase product triangulation is used. Tags: "top",
/// "bottom".
TaggedComplex prism_complex(int p, int k);

/// Nerve of a cover: vertices are the part indices with nonempty part, and a
/// finite index set spans a simplex iff the parts intersect.
SimplicialComplex nerve_of_cover(const Cover& cover);

/// Cover of sd Δ(p) by the closed stars of the subdivision vertices, indexed
/// by the faces of Δ(p).
Cover star_cover_of_subdivision(int p);

/// The intersection pattern of the *open* stars of subdivision vertices:
/// a set of face-indices spans a simplex iff the corresponding barycenter
/// vertices have a common coface in sd Δ(p). This is the nerve of the open
/// star cover of the polyhedron (closed-star subcomplexes intersect too
/// coarsely to see it).
SimplicialComplex open_star_nerve_of_subdivision(int p);

long long euler_characteristic(const SimplicialComplex& k);

/// Abstract-complex isomorphism test (backtracking on vertex images with
/// degree-signature pruning). Intended for the small complexes in this
/// project's test corpus.
bool are_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b);

/// Restriction of a complex to a subcomplex as a standalone complex
/// (vertex order induced from the parent).
SimplicialComplex restrict_to(const SimplicialComplex& k, const SimplexSet& sub);

/// Disjoint union; vertex names prefixed to stay unique.
SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b);

} // namespace simptop
