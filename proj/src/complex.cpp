#include "simptop/complex.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace simptop {

namespace {

void add_with_faces(SimplexSet& out, const Simplex& s) {
    if (s.empty()) return;
    if (out.count(s)) return;
    out.insert(s);
    if (s.size() == 1) return;
    Simplex face;
    face.reserve(s.size() - 1);
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
        face.clear();
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != drop) face.push_back(s[i]);
        add_with_faces(out, face);
    }
}

} // namespace

SimplicialComplex SimplicialComplex::make(std::vector<std::string> vertex_order,
                                          const std::vector<std::vector<std::string>>& simplices_by_name) {
    SimplicialComplex k;
    k.vertex_names_ = std::move(vertex_order);
    for (int i = 0; i < static_cast<int>(k.vertex_names_.size()); ++i) {
        auto [it, fresh] = k.vertex_index_.emplace(k.vertex_names_[static_cast<std::size_t>(i)], i);
        if (!fresh) throw std::invalid_argument("duplicate vertex name: " + k.vertex_names_[static_cast<std::size_t>(i)]);
    }
    for (const auto& names : simplices_by_name) {
        Simplex s;
        for (const auto& n : names) {
            auto it = k.vertex_index_.find(n);
            if (it == k.vertex_index_.end()) throw std::invalid_argument("unknown vertex in simplex: " + n);
            s.push_back(it->second);
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        add_with_faces(k.simplices_, s);
    }
    for (int i = 0; i < k.vertex_count(); ++i) k.simplices_.insert({i});
    return k;
}

SimplicialComplex SimplicialComplex::from_index_simplices(int n_vertices, const std::vector<Simplex>& simplices) {
    SimplicialComplex k;
    for (int i = 0; i < n_vertices; ++i) {
        k.vertex_names_.push_back(std::to_string(i));
        k.vertex_index_.emplace(k.vertex_names_.back(), i);
    }
    for (Simplex s : simplices) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (int v : s)
            if (v < 0 || v >= n_vertices) throw std::invalid_argument("vertex index out of range");
        add_with_faces(k.simplices_, s);
    }
    for (int i = 0; i < n_vertices; ++i) k.simplices_.insert({i});
    return k;
}

std::optional<int> SimplicialComplex::vertex_index(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

int SimplicialComplex::dim() const {
    int d = -1;
    for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
    return d;
}

std::vector<long long> SimplicialComplex::f_vector() const {
    std::vector<long long> f(static_cast<std::size_t>(dim() + 1), 0);
    for (const auto& s : simplices_) ++f[s.size() - 1];
    return f;
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0;
    for (const auto& s : simplices_) chi += (s.size() % 2 == 1) ? 1 : -1;
    return chi;
}

std::vector<Simplex> SimplicialComplex::simplices_of_dim(int d) const {
    std::vector<Simplex> out;
    for (const auto& s : simplices_)
        if (static_cast<int>(s.size()) == d + 1) out.push_back(s);
    return out;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::vector<Simplex> out;
    for (const auto& s : simplices_) {
        bool maximal = true;
        // s is maximal iff no coface with one extra vertex is present
        for (int v = 0; v < vertex_count() && maximal; ++v) {
            if (std::binary_search(s.begin(), s.end(), v)) continue;
            Simplex t = s;
            t.insert(std::lower_bound(t.begin(), t.end(), v), v);
            if (simplices_.count(t)) maximal = false;
        }
        if (maximal) out.push_back(s);
    }
    return out;
}

SimplexSet SimplicialComplex::skeleton(int p) const {
    SimplexSet out;
    for (const auto& s : simplices_)
        if (static_cast<int>(s.size()) <= p + 1) out.insert(s);
    return out;
}

bool SimplicialComplex::is_subcomplex(const SimplexSet& sub) const {
    for (const auto& s : sub) {
        if (!simplices_.count(s)) return false;
        if (s.size() > 1) {
            Simplex face;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                face.clear();
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop) face.push_back(s[i]);
                if (!sub.count(face)) return false;
            }
        }
    }
    return true;
}

SimplexSet SimplicialComplex::closed_star(int vertex) const {
    SimplexSet out;
    for (const auto& s : simplices_)
        if (std::binary_search(s.begin(), s.end(), vertex)) add_with_faces(out, s);
    return out;
}

SimplexSet SimplicialComplex::close_down(const SimplexSet& generators) {
    SimplexSet out;
    for (const auto& s : generators) add_with_faces(out, s);
    return out;
}

void Cover::validate() const {
    for (const auto& [name, part] : parts)
        if (!base.is_subcomplex(part))
            throw std::invalid_argument("cover part '" + name + "' is not a subcomplex of the base");
}

bool Cover::is_covering() const {
    for (const auto& s : base.simplices()) {
        bool found = false;
        for (const auto& [name, part] : parts)
            if (part.count(s)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

SimplexSet Cover::intersection(const std::vector<int>& part_ids) const {
    if (part_ids.empty()) return base.simplices();
    SimplexSet out = part(part_ids[0]);
    for (std::size_t i = 1; i < part_ids.size(); ++i) {
        SimplexSet next;
        const SimplexSet& other = part(part_ids[i]);
        for (const auto& s : out)
            if (other.count(s)) next.insert(s);
        out = std::move(next);
    }
    return out;
}

SimplicialComplex standard_complex(int p) {
    if (p < 0) throw std::invalid_argument("standard_complex: p must be >= 0");
    Simplex top(static_cast<std::size_t>(p) + 1);
    for (int i = 0; i <= p; ++i) top[static_cast<std::size_t>(i)] = i;
    return SimplicialComplex::from_index_simplices(p + 1, {top});
}

SimplicialComplex standard_boundary(int p) {
    if (p < 0) throw std::invalid_argument("standard_boundary: p must be >= 0");
    std::vector<Simplex> facets;
    for (int drop = 0; drop <= p; ++drop) {
        Simplex f;
        for (int i = 0; i <= p; ++i)
            if (i != drop) f.push_back(i);
        if (!f.empty()) facets.push_back(f);
    }
    return SimplicialComplex::from_index_simplices(p == 0 ? 0 : p + 1, facets);
}

namespace {

std::string simplex_label(const SimplicialComplex& k, const Simplex& s) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << k.vertex_name(s[i]);
    os << ")";
    return os.str();
}

} // namespace

std::string subdivision_vertex_name(const SimplicialComplex& k, const Simplex& s) {
    return simplex_label(k, s);
}

SimplicialComplex subdivide(const SimplicialComplex& k) { return subdivide_with_map(k).sd; }

Subdivision subdivide_with_map(const SimplicialComplex& k) {
    // sd vertices = simplices of k, ordered by (dimension, lex on index list);
    // the simplex set iterates in lex order, so a stable sort by size gives
    // exactly that order.
    std::vector<Simplex> verts(k.simplices().begin(), k.simplices().end());
    std::stable_sort(verts.begin(), verts.end(),
                     [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });

    std::map<Simplex, int> id;
    std::vector<std::string> names;
    for (const auto& s : verts) {
        id[s] = static_cast<int>(names.size());
        names.push_back(simplex_label(k, s));
    }

    // chains of proper faces, built by extending each simplex downward
    std::vector<Simplex> chains_out;
    SimplexSet sd_simplices;
    std::function<void(const Simplex&, Simplex&)> extend = [&](const Simplex& bottom, Simplex& chain) {
        sd_simplices.insert(chain); // chain is sorted: ids increase with dimension
        if (bottom.size() == 1) return;
        // enumerate proper nonempty subsets of bottom
        const int n = static_cast<int>(bottom.size());
        for (int mask = 1; mask + 1 < (1 << n); ++mask) {
            Simplex face;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) face.push_back(bottom[static_cast<std::size_t>(i)]);
            chain.insert(chain.begin(), id[face]);
            extend(face, chain);
            chain.erase(chain.begin());
        }
    };
    for (const auto& s : k.simplices()) {
        Simplex chain = {id[s]};
        extend(s, chain);
    }

    std::vector<std::vector<std::string>> by_name;
    for (const auto& s : sd_simplices) {
        std::vector<std::string> ns;
        for (int v : s) ns.push_back(names[static_cast<std::size_t>(v)]);
        by_name.push_back(std::move(ns));
    }
    Subdivision out;
    out.sd = SimplicialComplex::make(names, by_name);
    out.vertex_simplex = std::move(verts);
    return out;
}

SimplicialComplex cone(const SimplicialComplex& k) {
    std::string apex = "*";
    while (k.vertex_index(apex)) apex += "*";
    std::vector<std::string> names = {apex};
    for (const auto& n : k.vertex_names()) names.push_back(n);
    std::vector<std::vector<std::string>> simplices;
    for (const auto& s : k.simplices()) {
        std::vector<std::string> plain, coned = {apex};
        for (int v : s) {
            plain.push_back(k.vertex_name(v));
            coned.push_back(k.vertex_name(v));
        }
        simplices.push_back(plain);
        simplices.push_back(coned);
    }
    simplices.push_back({apex});
    return SimplicialComplex::make(names, simplices);
}

namespace {

// One cone level of the prism construction: a triangulation of |L| x I whose
// top is L and whose bottom is sd L. Vertex names: top vertices get
// `top_prefix + name`, bottom (barycenter) vertices get `bot_prefix + label`.
struct PrismLevel {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> simplices;
    std::vector<std::vector<std::string>> top;
    std::vector<std::vector<std::string>> bottom;
};

PrismLevel prism_level(const SimplicialComplex& l, const std::string& top_prefix, const std::string& bot_prefix) {
    PrismLevel out;
    for (const auto& n : l.vertex_names()) out.names.push_back(top_prefix + n);

    std::vector<Simplex> verts(l.simplices().begin(), l.simplices().end());
    std::stable_sort(verts.begin(), verts.end(),
                     [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
    std::map<Simplex, std::string> bname;
    for (const auto& s : verts) {
        bname[s] = bot_prefix + simplex_label(l, s);
        out.names.push_back(bname[s]);
    }

    auto top_name = [&](int v) { return top_prefix + l.vertex_name(v); };

    // block(s) = apex b_s joined with (top face of s  ∪  facet blocks),
    // assembled iteratively by dimension
    std::map<Simplex, std::vector<std::vector<std::string>>> block;
    for (const auto& s : verts) {
        std::vector<std::vector<std::string>> base_faces;
        // all nonempty subsets of the top copy of s
        const int n = static_cast<int>(s.size());
        for (int mask = 1; mask < (1 << n); ++mask) {
            std::vector<std::string> f;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) f.push_back(top_name(s[static_cast<std::size_t>(i)]));
            base_faces.push_back(std::move(f));
        }
        if (n > 1) {
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex facet;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop) facet.push_back(s[i]);
                for (const auto& f : block[facet]) base_faces.push_back(f);
            }
        }
        std::vector<std::vector<std::string>> b;
        b.push_back({bname[s]});
        for (const auto& f : base_faces) {
            b.push_back(f);
            std::vector<std::string> joined = f;
            joined.push_back(bname[s]);
            b.push_back(std::move(joined));
        }
        block[s] = std::move(b);
    }

    for (const auto& s : verts)
        for (const auto& f : block[s]) out.simplices.push_back(f);

    for (const auto& s : l.simplices()) {
        std::vector<std::string> t;
        for (int v : s) t.push_back(top_name(v));
        out.top.push_back(std::move(t));
    }
    // bottom = chains of barycenters = sd L; harvest from blocks: the
    // simplices using only bottom names
    for (const auto& s : verts)
        for (const auto& f : block[s]) {
            bool all_bottom = true;
            for (const auto& nm : f)
                if (nm.rfind(bot_prefix, 0) != 0) {
                    all_bottom = false;
                    break;
                }
            if (all_bottom) out.bottom.push_back(f);
        }
    return out;
}

} // namespace

TaggedComplex prism_complex(int p, int k) {
    if (p < 0 || k < 0) throw std::invalid_argument("prism_complex: p, k must be >= 0");

    if (k == 0) {
        // staircase triangulation of Δ(p) x I: maximal cells
        // (0,b)..(i,b)(i,t)..(p,t); top = {v:t}, bottom = {v:b}
        std::vector<std::string> names;
        for (int i = 0; i <= p; ++i) names.push_back("t" + std::to_string(i));
        for (int i = 0; i <= p; ++i) names.push_back("b" + std::to_string(i));
        std::vector<std::vector<std::string>> cells;
        for (int i = 0; i <= p; ++i) {
            std::vector<std::string> c;
            for (int j = 0; j <= i; ++j) c.push_back("b" + std::to_string(j));
            for (int j = i; j <= p; ++j) c.push_back("t" + std::to_string(j));
            cells.push_back(std::move(c));
        }
        TaggedComplex out;
        out.cx = SimplicialComplex::make(names, cells);
        SimplexSet top, bottom;
        Simplex tops, bots;
        for (int i = 0; i <= p; ++i) {
            tops.push_back(*out.cx.vertex_index("t" + std::to_string(i)));
            bots.push_back(*out.cx.vertex_index("b" + std::to_string(i)));
        }
        std::sort(tops.begin(), tops.end());
        std::sort(bots.begin(), bots.end());
        add_with_faces(top, tops);
        add_with_faces(bottom, bots);
        out.tags["top"] = std::move(top);
        out.tags["bottom"] = std::move(bottom);
        return out;
    }

    // stack k cone levels; level j interpolates sd^j Δ(p) (top) to sd^{j+1} (bottom)
    SimplicialComplex level_cx = standard_complex(p);
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> simplices;
    std::set<std::string> seen;
    std::vector<std::vector<std::string>> first_top, last_bottom;
    for (int j = 0; j < k; ++j) {
        std::string tp = "L" + std::to_string(j) + ":";
        std::string bp = "L" + std::to_string(j + 1) + ":";
        PrismLevel lvl = prism_level(level_cx, tp, bp);
        for (const auto& n : lvl.names)
            if (seen.insert(n).second) names.push_back(n);
        for (auto& s : lvl.simplices) simplices.push_back(std::move(s));
        if (j == 0) first_top = lvl.top;
        if (j == k - 1) last_bottom = lvl.bottom;
        if (j + 1 < k) {
            // names of the next level's top are exactly this level's bottom:
            // "L{j+1}:" + sd-label. Rebuild the level complex as sd with the
            // bare labels so prism_level() prefixes line up.
            level_cx = subdivide(level_cx);
        }
    }

    TaggedComplex out;
    out.cx = SimplicialComplex::make(names, simplices);
    auto to_tag = [&](const std::vector<std::vector<std::string>>& fam) {
        SimplexSet tag;
        for (const auto& f : fam) {
            Simplex s;
            for (const auto& nm : f) s.push_back(*out.cx.vertex_index(nm));
            std::sort(s.begin(), s.end());
            tag.insert(std::move(s));
        }
        return tag;
    };
    out.tags["top"] = to_tag(first_top);
    out.tags["bottom"] = to_tag(last_bottom);
    return out;
}

SimplicialComplex nerve_of_cover(const Cover& cover) {
    std::vector<int> alive;
    for (int i = 0; i < cover.part_count(); ++i)
        if (!cover.part(i).empty()) alive.push_back(i);

    std::vector<std::string> names;
    for (int i : alive) names.push_back(cover.part_name(i));

    // grow simplices by cardinality; downward closure makes this exhaustive
    std::vector<std::vector<int>> current; // subsets as positions into `alive`
    std::vector<Simplex> found;
    for (int i = 0; i < static_cast<int>(alive.size()); ++i) {
        current.push_back({i});
        found.push_back({i});
    }
    while (!current.empty()) {
        std::set<std::vector<int>> next;
        for (const auto& sub : current) {
            for (int j = sub.back() + 1; j < static_cast<int>(alive.size()); ++j) {
                std::vector<int> cand = sub;
                cand.push_back(j);
                if (next.count(cand)) continue;
                std::vector<int> ids;
                for (int pos : cand) ids.push_back(alive[static_cast<std::size_t>(pos)]);
                if (!cover.intersection(ids).empty()) next.insert(cand);
            }
        }
        current.assign(next.begin(), next.end());
        for (const auto& s : current) found.push_back(s);
    }

    std::vector<std::vector<std::string>> by_name;
    for (const auto& s : found) {
        std::vector<std::string> ns;
        for (int v : s) ns.push_back(names[static_cast<std::size_t>(v)]);
        by_name.push_back(std::move(ns));
    }
    return SimplicialComplex::make(names, by_name);
}

Cover star_cover_of_subdivision(int p) {
    if (p < 0) throw std::invalid_argument("star_cover_of_subdivision: p must be >= 0");
    SimplicialComplex base = subdivide(standard_complex(p));
    Cover cover;
    cover.base = base;
    for (int v = 0; v < base.vertex_count(); ++v)
        cover.parts.emplace_back(base.vertex_name(v), base.closed_star(v));
    return cover;
}

SimplicialComplex open_star_nerve_of_subdivision(int p) {
    SimplicialComplex sd = subdivide(standard_complex(p));
    // Vertices of the nerve = sd vertices; a set spans a simplex iff it has a
    // common coface in sd, i.e. iff the set itself is an sd simplex. So the
    // open-star nerve is sd itself with relabelled vertices.
    std::vector<std::vector<std::string>> by_name;
    for (const auto& s : sd.simplices()) {
        std::vector<std::string> ns;
        for (int v : s) ns.push_back(sd.vertex_name(v));
        by_name.push_back(std::move(ns));
    }
    return SimplicialComplex::make(sd.vertex_names(), by_name);
}

long long euler_characteristic(const SimplicialComplex& k) { return k.euler_characteristic(); }

namespace {

// per-vertex signature: number of incident simplices per dimension
std::vector<std::vector<long long>> vertex_signatures(const SimplicialComplex& k) {
    std::vector<std::vector<long long>> sig(static_cast<std::size_t>(k.vertex_count()),
                                            std::vector<long long>(static_cast<std::size_t>(k.dim() + 1), 0));
    for (const auto& s : k.simplices())
        for (int v : s) ++sig[static_cast<std::size_t>(v)][s.size() - 1];
    return sig;
}

} // namespace

bool are_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    if (a.f_vector() != b.f_vector()) return false;
    auto sig_a = vertex_signatures(a), sig_b = vertex_signatures(b);
    {
        auto sa = sig_a, sb = sig_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }

    const int n = a.vertex_count();
    std::vector<int> image(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);

    // order source vertices by rarity of signature for better pruning
    std::map<std::vector<long long>, int> freq;
    for (const auto& s : sig_a) ++freq[s];
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return std::tie(freq[sig_a[static_cast<std::size_t>(x)]], x) <
               std::tie(freq[sig_a[static_cast<std::size_t>(y)]], y);
    });

    std::function<bool(int)> place = [&](int pos) -> bool {
        if (pos == n) {
            // full check both directions
            for (const auto& s : a.simplices()) {
                Simplex t;
                for (int v : s) t.push_back(image[static_cast<std::size_t>(v)]);
                std::sort(t.begin(), t.end());
                if (!b.contains(t)) return false;
            }
            return true;
        }
        int v = order[static_cast<std::size_t>(pos)];
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)]) continue;
            if (sig_a[static_cast<std::size_t>(v)] != sig_b[static_cast<std::size_t>(w)]) continue;
            image[static_cast<std::size_t>(v)] = w;
            used[static_cast<std::size_t>(w)] = true;
            // partial consistency: simplices fully mapped so far must match
            bool ok = true;
            for (const auto& s : a.simplices()) {
                Simplex t;
                bool complete = true;
                for (int x : s) {
                    if (image[static_cast<std::size_t>(x)] < 0) {
                        complete = false;
                        break;
                    }
                    t.push_back(image[static_cast<std::size_t>(x)]);
                }
                if (!complete) continue;
                std::sort(t.begin(), t.end());
                if (!b.contains(t)) {
                    ok = false;
                    break;
                }
            }
            if (ok && place(pos + 1)) return true;
            image[static_cast<std::size_t>(v)] = -1;
            used[static_cast<std::size_t>(w)] = false;
        }
        return false;
    };
    return place(0);
}

SimplicialComplex restrict_to(const SimplicialComplex& k, const SimplexSet& sub) {
    if (!k.is_subcomplex(sub)) throw std::invalid_argument("restrict_to: not a subcomplex");
    std::set<int> verts;
    for (const auto& s : sub)
        for (int v : s) verts.insert(v);
    std::vector<std::string> names;
    for (int v : verts) names.push_back(k.vertex_name(v));
    std::vector<std::vector<std::string>> by_name;
    for (const auto& s : sub) {
        std::vector<std::string> ns;
        for (int v : s) ns.push_back(k.vertex_name(v));
        by_name.push_back(std::move(ns));
    }
    return SimplicialComplex::make(names, by_name);
}

SimplicialComplex disjoint_union(const SimplicialComplex& a, const SimplicialComplex& b) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> simpl;
    for (const auto& n : a.vertex_names()) names.push_back("A." + n);
    for (const auto& n : b.vertex_names()) names.push_back("B." + n);
    for (const auto& s : a.simplices()) {
        std::vector<std::string> ns;
        for (int v : s) ns.push_back("A." + a.vertex_name(v));
        simpl.push_back(std::move(ns));
    }
    for (const auto& s : b.simplices()) {
        std::vector<std::string> ns;
        for (int v : s) ns.push_back("B." + b.vertex_name(v));
        simpl.push_back(std::move(ns));
    }
    return SimplicialComplex::make(names, simpl);
}

} // namespace simptop
