#include "simptop/sset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace simptop {

namespace {

// Normal-form insertion of s_j into an existing word (s_i s_j = s_{j+1} s_i
// for i <= j).
std::vector<int> insert_degeneracy(std::vector<int> word, int j) {
    int cur = j;
    for (std::size_t t = 0; t <= word.size(); ++t) {
        if (t == word.size()) {
            word.push_back(cur);
            break;
        }
        if (cur > word[t]) {
            word.insert(word.begin() + static_cast<std::ptrdiff_t>(t), cur);
            break;
        }
        word[t] += 1;
    }
    return word;
}

} // namespace

SSimplex FiniteSimplicialSet::degenerate(const SSimplex& s, int j) {
    return SSimplex{s.gen, insert_degeneracy(s.word, j)};
}

SSimplex FiniteSimplicialSet::face(const SSimplex& s, int i) const {
    // push d_i through the degeneracy word
    int a = i;
    std::vector<int> word = s.word;
    for (std::size_t t = 0; t < word.size(); ++t) {
        int j = word[t];
        if (a < j) {
            word[t] = j - 1;
        } else if (a == j || a == j + 1) {
            // d_a s_j = id: the face is the rest of the word on the generator
            word.erase(word.begin() + static_cast<std::ptrdiff_t>(t));
            return SSimplex{s.gen, word};
        } else {
            a -= 1;
        }
    }
    // d_a hits the generator
    const Generator& g = gens_[static_cast<std::size_t>(s.gen)];
    if (g.dim == 0) throw std::invalid_argument("face of a 0-simplex");
    SSimplex cur = g.faces[static_cast<std::size_t>(a)];
    for (auto it = word.rbegin(); it != word.rend(); ++it) cur = degenerate(cur, *it);
    return cur;
}

FiniteSimplicialSet FiniteSimplicialSet::make(std::vector<Generator> gens) {
    FiniteSimplicialSet x;
    x.gens_ = std::move(gens);
    for (int g = 0; g < x.generator_count(); ++g) {
        const Generator& gen = x.gens_[static_cast<std::size_t>(g)];
        if (gen.dim < 0) throw std::invalid_argument("generator with negative dimension");
        if (gen.dim == 0) {
            if (!gen.faces.empty()) throw std::invalid_argument("0-generator with faces");
            continue;
        }
        if (static_cast<int>(gen.faces.size()) != gen.dim + 1)
            throw std::invalid_argument("generator '" + gen.label + "': face count != dim+1");
        for (const auto& f : gen.faces) {
            if (f.gen < 0 || f.gen >= x.generator_count())
                throw std::invalid_argument("generator '" + gen.label + "': face references unknown generator");
            if (x.dim_of(f) != gen.dim - 1)
                throw std::invalid_argument("generator '" + gen.label + "': face of wrong dimension");
            for (std::size_t t = 0; t + 1 < f.word.size(); ++t)
                if (f.word[t] <= f.word[t + 1])
                    throw std::invalid_argument("degeneracy word not in normal form");
        }
    }
    // simplicial identities on every generator
    for (int g = 0; g < x.generator_count(); ++g) {
        const Generator& gen = x.gens_[static_cast<std::size_t>(g)];
        if (gen.dim < 2) continue;
        SSimplex s{g, {}};
        for (int j = 1; j <= gen.dim; ++j)
            for (int i = 0; i < j; ++i) {
                SSimplex lhs = x.face(x.face(s, j), i);
                SSimplex rhs = x.face(x.face(s, i), j - 1);
                if (!(lhs == rhs)) {
                    std::ostringstream os;
                    os << "simplicial identity d_" << i << " d_" << j << " = d_" << j - 1 << " d_" << i
                       << " fails on generator '" << gen.label << "'";
                    throw std::invalid_argument(os.str());
                }
            }
    }
    return x;
}

int FiniteSimplicialSet::top_dim() const {
    int d = -1;
    for (const auto& g : gens_) d = std::max(d, g.dim);
    return d;
}

std::vector<int> FiniteSimplicialSet::generators_of_dim(int d) const {
    std::vector<int> out;
    for (int g = 0; g < generator_count(); ++g)
        if (gens_[static_cast<std::size_t>(g)].dim == d) out.push_back(g);
    return out;
}

std::vector<SSimplex> FiniteSimplicialSet::simplices_of_dim(int p) const {
    std::vector<SSimplex> out;
    for (int g = 0; g < generator_count(); ++g) {
        int m = gens_[static_cast<std::size_t>(g)].dim;
        if (m > p) continue;
        int r = p - m;
        // enumerate strictly decreasing words i_1 > ... > i_r, where the
        // t-th-from-innermost entry acts on a simplex of dimension m+t-1
        std::vector<int> word(static_cast<std::size_t>(r));
        std::function<void(int, int)> rec = [&](int t, int low) {
            // choose entries innermost (t = r-1) to outermost (t = 0);
            // entry at position t acts on dimension m + (r-1-t)
            if (t < 0) {
                out.push_back(SSimplex{g, word});
                return;
            }
            int high = m + (r - 1 - t);
            for (int idx = low; idx <= high; ++idx) {
                word[static_cast<std::size_t>(t)] = idx;
                rec(t - 1, idx + 1);
            }
        };
        if (r == 0)
            out.push_back(SSimplex{g, {}});
        else
            rec(r - 1, 0);
    }
    return out;
}

std::vector<long long> FiniteSimplicialSet::nondegenerate_counts() const {
    std::vector<long long> counts(static_cast<std::size_t>(std::max(0, top_dim() + 1)), 0);
    for (const auto& g : gens_) ++counts[static_cast<std::size_t>(g.dim)];
    return counts;
}

std::string FiniteSimplicialSet::describe(const SSimplex& s) const {
    std::ostringstream os;
    for (int j : s.word) os << "s" << j;
    if (!s.word.empty()) os << ".";
    os << gens_[static_cast<std::size_t>(s.gen)].label;
    return os.str();
}

std::vector<long long> SkeletalFiltration::cell_counts() const {
    std::vector<long long> out;
    for (const auto& cells : cells_by_dim) out.push_back(static_cast<long long>(cells.size()));
    return out;
}

SkeletalFiltration skeletal_filtration(const FiniteSimplicialSet& x) {
    SkeletalFiltration f;
    f.cells_by_dim.resize(static_cast<std::size_t>(std::max(0, x.top_dim() + 1)));
    for (int g = 0; g < x.generator_count(); ++g) {
        const auto& gen = x.generator(g);
        f.cells_by_dim[static_cast<std::size_t>(gen.dim)].push_back({g, gen.faces});
    }
    return f;
}

FiniteSimplicialSet from_ordered_complex(const SimplicialComplex& k) {
    std::vector<Simplex> all(k.simplices().begin(), k.simplices().end());
    std::stable_sort(all.begin(), all.end(),
                     [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
    std::map<Simplex, int> id;
    std::vector<FiniteSimplicialSet::Generator> gens;
    for (const auto& s : all) {
        id[s] = static_cast<int>(gens.size());
        FiniteSimplicialSet::Generator g;
        g.dim = static_cast<int>(s.size()) - 1;
        {
            std::ostringstream os;
            os << "(";
            for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << k.vertex_name(s[i]);
            os << ")";
            g.label = os.str();
        }
        if (s.size() > 1) {
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex face;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop) face.push_back(s[i]);
                g.faces.push_back(SSimplex{id[face], {}});
            }
        }
        gens.push_back(std::move(g));
    }
    return FiniteSimplicialSet::make(std::move(gens));
}

SmallCategory SmallCategory::make(std::vector<std::string> objects, std::vector<Arrow> arrows,
                                  std::vector<std::tuple<int, int, Morphism>> composites) {
    SmallCategory c;
    c.objects_ = std::move(objects);
    c.arrows_ = std::move(arrows);
    for (const auto& a : c.arrows_) {
        if (a.src < 0 || a.src >= c.object_count() || a.tgt < 0 || a.tgt >= c.object_count())
            throw std::invalid_argument("arrow '" + a.name + "' has out-of-range endpoints");
    }
    c.comp_.assign(static_cast<std::size_t>(c.arrow_count()),
                   std::vector<std::optional<Morphism>>(static_cast<std::size_t>(c.arrow_count())));
    for (auto& [g, f, h] : composites) {
        if (c.arrows_[static_cast<std::size_t>(f)].tgt != c.arrows_[static_cast<std::size_t>(g)].src)
            throw std::invalid_argument("composition entry for non-composable pair");
        if (c.src(h) != c.arrows_[static_cast<std::size_t>(f)].src || c.tgt(h) != c.arrows_[static_cast<std::size_t>(g)].tgt)
            throw std::invalid_argument("composite endpoints mismatch");
        c.comp_[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = h;
    }
    // closure: every composable pair must have an entry
    for (int f = 0; f < c.arrow_count(); ++f)
        for (int g = 0; g < c.arrow_count(); ++g)
            if (c.arrows_[static_cast<std::size_t>(f)].tgt == c.arrows_[static_cast<std::size_t>(g)].src &&
                !c.comp_[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)])
                throw std::invalid_argument("composition table incomplete for pair (" +
                                            c.arrows_[static_cast<std::size_t>(g)].name + ", " +
                                            c.arrows_[static_cast<std::size_t>(f)].name + ")");
    // associativity, exhaustively
    for (int f = 0; f < c.arrow_count(); ++f)
        for (int g = 0; g < c.arrow_count(); ++g) {
            if (c.arrows_[static_cast<std::size_t>(f)].tgt != c.arrows_[static_cast<std::size_t>(g)].src) continue;
            for (int h = 0; h < c.arrow_count(); ++h) {
                if (c.arrows_[static_cast<std::size_t>(g)].tgt != c.arrows_[static_cast<std::size_t>(h)].src) continue;
                Morphism lhs = c.compose(c.compose(arrow_of(h), arrow_of(g)), arrow_of(f));
                Morphism rhs = c.compose(arrow_of(h), c.compose(arrow_of(g), arrow_of(f)));
                if (!(lhs == rhs)) throw std::invalid_argument("composition not associative");
            }
        }
    return c;
}

SmallCategory::Morphism SmallCategory::compose(Morphism g, Morphism f) const {
    if (tgt(f) != src(g)) throw std::invalid_argument("compose: not composable");
    if (f.is_id) return g;
    if (g.is_id) return f;
    auto r = comp_[static_cast<std::size_t>(g.index)][static_cast<std::size_t>(f.index)];
    if (!r) throw std::invalid_argument("compose: missing table entry");
    return *r;
}

int SmallCategory::longest_chain() const {
    // DAG longest path over non-identity arrows; cycle -> throw
    std::vector<int> state(static_cast<std::size_t>(object_count()), 0); // 0 new, 1 active, 2 done
    std::vector<int> best(static_cast<std::size_t>(object_count()), 0);
    std::function<int(int)> dfs = [&](int v) -> int {
        if (state[static_cast<std::size_t>(v)] == 1)
            throw std::invalid_argument("category has a cycle of non-identity arrows; pass an explicit nerve dimension bound");
        if (state[static_cast<std::size_t>(v)] == 2) return best[static_cast<std::size_t>(v)];
        state[static_cast<std::size_t>(v)] = 1;
        int b = 0;
        for (const auto& a : arrows_)
            if (a.src == v) {
                if (a.tgt == v)
                    throw std::invalid_argument("category has a non-identity endomorphism; pass an explicit nerve dimension bound");
                b = std::max(b, 1 + dfs(a.tgt));
            }
        state[static_cast<std::size_t>(v)] = 2;
        best[static_cast<std::size_t>(v)] = b;
        return b;
    };
    int out = 0;
    for (int v = 0; v < object_count(); ++v) out = std::max(out, dfs(v));
    return out;
}

SmallCategory SmallCategory::poset(std::vector<std::string> objects, const std::vector<std::pair<int, int>>& less) {
    // transitive closure; one arrow per related pair
    const int n = static_cast<int>(objects.size());
    std::vector<std::vector<bool>> rel(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (auto& [i, j] : less) {
        if (i == j) throw std::invalid_argument("poset: reflexive pair");
        rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
                    rel[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
                    rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    for (int i = 0; i < n; ++i)
        if (rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)])
            throw std::invalid_argument("poset: relation has a cycle");

    std::vector<Arrow> arrows;
    std::map<std::pair<int, int>, int> arrow_id;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                arrow_id[{i, j}] = static_cast<int>(arrows.size());
                arrows.push_back({objects[static_cast<std::size_t>(i)] + "<" + objects[static_cast<std::size_t>(j)], i, j});
            }
    std::vector<std::tuple<int, int, Morphism>> comps;
    for (auto& [pf, f] : arrow_id)
        for (auto& [pg, g] : arrow_id)
            if (pf.second == pg.first) comps.emplace_back(g, f, arrow_of(arrow_id[{pf.first, pg.second}]));
    return make(std::move(objects), std::move(arrows), std::move(comps));
}

FiniteSimplicialSet nerve_category(const SmallCategory& c, std::optional<int> max_dim) {
    int bound = max_dim ? *max_dim : c.longest_chain();

    using Chain = std::vector<int>; // non-identity arrow ids, composable in order
    std::map<Chain, int> gen_id;
    std::vector<FiniteSimplicialSet::Generator> gens;

    // dimension 0: objects
    for (int v = 0; v < c.object_count(); ++v) {
        FiniteSimplicialSet::Generator g;
        g.dim = 0;
        g.label = c.object_name(v);
        gen_id[Chain{-1 - v}] = static_cast<int>(gens.size()); // sentinel key for objects
        gens.push_back(std::move(g));
    }

    std::vector<std::vector<Chain>> by_len = {{}};
    if (bound >= 1) {
        std::vector<Chain> level;
        for (int a = 0; a < c.arrow_count(); ++a) level.push_back({a});
        by_len.push_back(std::move(level));
        int len = 1;
        while (len < bound) {
            std::vector<Chain> next;
            for (const auto& ch : by_len.back())
                for (int a = 0; a < c.arrow_count(); ++a)
                    if (c.arrow(a).src == c.arrow(ch.back()).tgt) {
                        Chain e = ch;
                        e.push_back(a);
                        next.push_back(std::move(e));
                    }
            if (next.empty()) break;
            by_len.push_back(std::move(next));
            ++len;
        }
    }

    auto chain_label = [&](const Chain& ch) {
        std::ostringstream os;
        os << c.object_name(c.arrow(ch[0]).src);
        for (int a : ch) os << ">" << c.object_name(c.arrow(a).tgt);
        return os.str();
    };

    // register chain generators in length order so faces can refer back
    for (std::size_t l = 1; l < by_len.size(); ++l)
        for (const auto& ch : by_len[l]) {
            gen_id[ch] = static_cast<int>(gens.size());
            FiniteSimplicialSet::Generator g;
            g.dim = static_cast<int>(l);
            g.label = chain_label(ch);
            gens.push_back(std::move(g));
        }

    // normalize a morphism list (possibly with identities) to (generator, word)
    auto normalize = [&](const std::vector<SmallCategory::Morphism>& ms, int bottom_obj) -> SSimplex {
        Chain nd;
        std::vector<int> id_slots;
        for (std::size_t t = 0; t < ms.size(); ++t) {
            if (ms[t].is_id)
                id_slots.push_back(static_cast<int>(t));
            else
                nd.push_back(ms[t].index);
        }
        int g;
        if (nd.empty())
            g = gen_id.at(Chain{-1 - bottom_obj});
        else
            g = gen_id.at(nd);
        // removing identities right-to-left leaves earlier slots unchanged,
        // so the descending slot list is already the normal-form word
        std::vector<int> word(id_slots.rbegin(), id_slots.rend());
        return SSimplex{g, word};
    };

    // faces of the chain generators
    for (std::size_t l = 1; l < by_len.size(); ++l)
        for (const auto& ch : by_len[l]) {
            auto& g = gens[static_cast<std::size_t>(gen_id[ch])];
            const int n = static_cast<int>(l);
            for (int i = 0; i <= n; ++i) {
                std::vector<SmallCategory::Morphism> ms;
                if (i == 0) {
                    for (std::size_t t = 1; t < ch.size(); ++t) ms.push_back(SmallCategory::arrow_of(ch[t]));
                    g.faces.push_back(normalize(ms, c.arrow(ch[0]).tgt));
                } else if (i == n) {
                    for (std::size_t t = 0; t + 1 < ch.size(); ++t) ms.push_back(SmallCategory::arrow_of(ch[t]));
                    g.faces.push_back(normalize(ms, c.arrow(ch[0]).src));
                } else {
                    for (std::size_t t = 0; t < ch.size(); ++t) {
                        if (static_cast<int>(t) == i - 1) continue; // composed below
                        if (static_cast<int>(t) == i) {
                            ms.push_back(c.compose(SmallCategory::arrow_of(ch[t]),
                                                   SmallCategory::arrow_of(ch[t - 1])));
                        } else {
                            ms.push_back(SmallCategory::arrow_of(ch[t]));
                        }
                    }
                    g.faces.push_back(normalize(ms, c.arrow(ch[0]).src));
                }
            }
        }

    return FiniteSimplicialSet::make(std::move(gens));
}

std::vector<SSimplex> horn_fillers(const FiniteSimplicialSet& x, int p, int k,
                                   const std::vector<std::optional<SSimplex>>& assignment) {
    if (p < 1) throw std::invalid_argument("horn_fillers: p must be >= 1");
    if (k < 0 || k > p) throw std::invalid_argument("horn_fillers: k out of range");
    if (static_cast<int>(assignment.size()) != p + 1)
        throw std::invalid_argument("horn_fillers: assignment must list p+1 slots");
    for (int i = 0; i <= p; ++i) {
        if (i == k) continue;
        if (!assignment[static_cast<std::size_t>(i)])
            throw std::invalid_argument("horn_fillers: missing face " + std::to_string(i));
        if (x.dim_of(*assignment[static_cast<std::size_t>(i)]) != p - 1)
            throw std::invalid_argument("horn_fillers: face " + std::to_string(i) + " has wrong dimension");
    }
    // compatibility d_i F_j = d_{j-1} F_i for i < j, i,j != k
    for (int j = 1; j <= p; ++j)
        for (int i = 0; i < j; ++i) {
            if (i == k || j == k) continue;
            if (p == 1) continue; // faces are 0-simplices; nothing to check
            SSimplex lhs = x.face(*assignment[static_cast<std::size_t>(j)], i);
            SSimplex rhs = x.face(*assignment[static_cast<std::size_t>(i)], j - 1);
            if (!(lhs == rhs)) {
                std::ostringstream os;
                os << "incompatible horn assignment: d_" << i << "(face " << j << ") != d_" << j - 1 << "(face "
                   << i << ")";
                throw std::invalid_argument(os.str());
            }
        }

    std::vector<SSimplex> out;
    for (const auto& cand : x.simplices_of_dim(p)) {
        bool ok = true;
        for (int i = 0; i <= p && ok; ++i) {
            if (i == k) continue;
            if (!(x.face(cand, i) == *assignment[static_cast<std::size_t>(i)])) ok = false;
        }
        if (ok) out.push_back(cand);
    }
    return out;
}

} // namespace simptop
