#include "toursid/trees.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "toursid/error.hpp"
#include "toursid/rational.hpp"

namespace toursid {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::CaterpillarRule: return "CaterpillarRule";
    case Provenance::IsoPairRecursion: return "IsoPairRecursion";
    case Provenance::Trivial: return "Trivial";
    case Provenance::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::vector<Arc> TreeOrientation::arcs() const {
  std::vector<Arc> out;
  const auto& edges = tree.edges();
  for (std::size_t i = 0; i < edges.size() && i < arc_dirs.size(); ++i) {
    auto [a, b] = edges[i];
    out.push_back(arc_dirs[i] == Dir::Forward ? Arc{a, b} : Arc{b, a});
  }
  return out;
}

namespace {

int height_away(const Tree& t, int u, int parent) {
  int best = 0;
  for (int w : t.adjacency()[u])
    if (w != parent) best = std::max(best, 1 + height_away(t, w, u));
  return best;
}

std::size_t edge_index(const Tree& t, int a, int b) {
  const auto& edges = t.edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    if ((edges[i].first == a && edges[i].second == b) || (edges[i].first == b && edges[i].second == a)) return i;
  throw Error("InternalAssertionFailed", "edge not found");
}

void set_arc(const Tree& t, std::vector<Dir>& dirs, int from, int to) {
  const std::size_t i = edge_index(t, from, to);
  dirs[i] = t.edges()[i].first == from ? Dir::Forward : Dir::Backward;
}

std::string ahu(const Tree& t, int u, int parent) {
  std::vector<std::string> kids;
  for (int w : t.adjacency()[u])
    if (w != parent) kids.push_back(ahu(t, w, u));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

void collect(const Tree& t, int u, int parent, std::vector<int>& out) {
  out.push_back(u);
  for (int w : t.adjacency()[u])
    if (w != parent) collect(t, w, u, out);
}

void match(const Tree& t, int u1, int p1, int u2, int p2, std::map<int, int>& phi) {
  phi[u1] = u2;
  auto kids = [&](int u, int p) {
    std::vector<std::pair<std::string, int>> k;
    for (int w : t.adjacency()[u])
      if (w != p) k.push_back({ahu(t, w, u), w});
    std::sort(k.begin(), k.end());
    return k;
  };
  auto k1 = kids(u1, p1), k2 = kids(u2, p2);
  for (std::size_t i = 0; i < k1.size(); ++i) match(t, k1[i].second, u1, k2[i].second, u2, phi);
}

// Induced subtree on the listed vertices, relabelled in list order.
Tree induced(const Tree& t, const std::vector<int>& verts, std::map<int, int>& local) {
  local.clear();
  for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : t.edges()) {
    auto ia = local.find(a), ib = local.find(b);
    if (ia != local.end() && ib != local.end()) edges.push_back({ia->second, ib->second});
  }
  return Tree(static_cast<int>(verts.size()), std::move(edges));
}

}  // namespace

std::vector<int> canonical_longest_path(const Tree& t) {
  if (t.v() == 0) return {};
  int diam = 0;
  for (int s = 0; s < t.v(); ++s) diam = std::max(diam, height_away(t, s, -1));
  int start = 0;
  while (height_away(t, start, -1) != diam) ++start;
  std::vector<int> path{start};
  int prev = -1, cur = start;
  for (int remaining = diam; remaining > 0; --remaining) {
    int next = -1;
    for (int w : t.adjacency()[cur])  // adjacency is sorted
      if (w != prev && 1 + height_away(t, w, cur) >= remaining) {
        next = w;
        break;
      }
    path.push_back(next);
    prev = cur;
    cur = next;
  }
  return path;
}

CaterpillarInfo is_caterpillar(const Tree& t) {
  CaterpillarInfo info;
  if (t.v() <= 2) {
    info.is_caterpillar = true;
    return info;
  }
  auto path = canonical_longest_path(t);
  std::set<int> on_path(path.begin(), path.end());
  for (int x = 0; x < t.v(); ++x) {
    if (on_path.count(x)) continue;
    if (t.degree(x) != 1) return info;
    // A leaf off the path must hang from an interior path vertex.
    if (!on_path.count(t.adjacency()[x][0])) return info;
  }
  info.is_caterpillar = true;
  info.spine.assign(path.begin() + 1, path.end() - 1);
  return info;
}

TreeOrientation orient_caterpillar(const Tree& t) {
  if (!is_caterpillar(t).is_caterpillar) throw Error("NotCaterpillar", "tree is not a caterpillar");
  TreeOrientation o;
  o.tree = t;
  o.arc_dirs.assign(t.edges().size(), Dir::Forward);
  if (t.v() <= 1) {
    o.provenance = Provenance::Trivial;
    return o;
  }
  o.provenance = Provenance::CaterpillarRule;
  auto x = canonical_longest_path(t);
  set_arc(t, o.arc_dirs, x[0], x[1]);
  bool in = true;  // previous spine arc points into x[i]
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    std::vector<int> ys;
    for (int w : t.adjacency()[x[i]])
      if (w != x[i - 1] && w != x[i + 1]) ys.push_back(w);
    for (std::size_t j = 1; j <= ys.size(); ++j) {
      const bool out = (j % 2 == 1) == in;
      if (out) set_arc(t, o.arc_dirs, x[i], ys[j - 1]);
      else set_arc(t, o.arc_dirs, ys[j - 1], x[i]);
    }
    const bool next_out = (t.degree(x[i]) % 2 == 0) == in;
    if (next_out) set_arc(t, o.arc_dirs, x[i], x[i + 1]);
    else set_arc(t, o.arc_dirs, x[i + 1], x[i]);
    in = next_out;
  }
  return o;
}

std::optional<IsoPair> find_isomorphic_pair(const Tree& t) {
  for (int v = 0; v < t.v(); ++v) {
    const auto& nb = t.adjacency()[v];
    std::vector<std::string> forms;
    for (int w : nb) forms.push_back(ahu(t, w, v));
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        if (forms[a] != forms[b]) continue;
        IsoPair p;
        p.v = v;
        p.w = nb[a];
        collect(t, nb[a], v, p.h1);
        collect(t, nb[b], v, p.h2);
        std::sort(p.h1.begin(), p.h1.end());
        std::sort(p.h2.begin(), p.h2.end());
        match(t, nb[a], v, nb[b], v, p.phi);
        return p;
      }
  }
  return std::nullopt;
}

bool verify_isomorphic_pair(const Tree& t, const IsoPair& p) {
  std::set<int> s1(p.h1.begin(), p.h1.end()), s2(p.h2.begin(), p.h2.end());
  if (s1.empty() || s1.size() != s2.size()) return false;
  for (int x : s1)
    if (s2.count(x)) return false;
  if (s1.count(p.v) || s2.count(p.v) || !s1.count(p.w)) return false;
  if (p.phi.size() != s1.size()) return false;
  std::set<int> image;
  for (auto [a, b] : p.phi) {
    if (!s1.count(a) || !s2.count(b)) return false;
    image.insert(b);
  }
  if (image.size() != s2.size()) return false;
  std::set<std::pair<int, int>> edge_set;
  for (auto [a, b] : t.edges()) edge_set.insert({std::min(a, b), std::max(a, b)});
  auto has = [&](int a, int b) { return edge_set.count({std::min(a, b), std::max(a, b)}) > 0; };
  // phi preserves adjacency both ways inside H1.
  for (int a : s1)
    for (int b : s1)
      if (a < b && has(a, b) != has(p.phi.at(a), p.phi.at(b))) return false;
  // Edges leaving H1 u H2 are exactly {v,w} and {v,phi(w)}.
  std::set<std::pair<int, int>> leaving;
  for (auto [a, b] : t.edges()) {
    const bool ia = s1.count(a) || s2.count(a), ib = s1.count(b) || s2.count(b);
    if ((s1.count(a) && s2.count(b)) || (s2.count(a) && s1.count(b))) return false;
    if (ia != ib) leaving.insert({std::min(a, b), std::max(a, b)});
  }
  const int w2 = p.phi.at(p.w);
  std::set<std::pair<int, int>> expected{{std::min(p.v, p.w), std::max(p.v, p.w)}, {std::min(p.v, w2), std::max(p.v, w2)}};
  return leaving == expected;
}

TreeOrientation orient_tree_tas(const Tree& t) {
  if (is_caterpillar(t).is_caterpillar) return orient_caterpillar(t);
  TreeOrientation o;
  o.tree = t;
  auto pair = find_isomorphic_pair(t);
  if (!pair || !verify_isomorphic_pair(t, *pair)) return o;

  std::set<int> removed(pair->h1.begin(), pair->h1.end());
  removed.insert(pair->h2.begin(), pair->h2.end());
  std::vector<int> rest;
  for (int x = 0; x < t.v(); ++x)
    if (!removed.count(x)) rest.push_back(x);

  std::map<int, int> local_rest, local_h1;
  Tree r = induced(t, rest, local_rest);
  Tree h1 = induced(t, pair->h1, local_h1);
  auto orient_r = orient_tree_tas(r);
  auto orient_h1 = orient_tree_tas(h1);
  if (orient_r.provenance == Provenance::Unknown || orient_h1.provenance == Provenance::Unknown) return o;

  o.arc_dirs.assign(t.edges().size(), Dir::Forward);
  for (auto [a, b] : orient_r.arcs()) set_arc(t, o.arc_dirs, rest[a], rest[b]);
  for (auto [a, b] : orient_h1.arcs()) {
    const int ga = pair->h1[a], gb = pair->h1[b];
    set_arc(t, o.arc_dirs, ga, gb);
    set_arc(t, o.arc_dirs, pair->phi.at(ga), pair->phi.at(gb));
  }
  set_arc(t, o.arc_dirs, pair->w, pair->v);
  set_arc(t, o.arc_dirs, pair->v, pair->phi.at(pair->w));
  o.provenance = Provenance::IsoPairRecursion;
  return o;
}

long long count_labeled_copies(const Digraph& d, const Tournament& t, const std::map<int, int>& pinned) {
  const int v = d.v(), n = t.n();
  std::vector<int> image(v, -1);
  std::vector<char> used(n, 0);
  for (auto [a, x] : pinned) {
    if (a < 0 || a >= v || x < 0 || x >= n) throw Error("InvalidArgument", "pinned vertex out of range");
    if (used[x]) return 0;
    image[a] = x;
    used[x] = 1;
  }
  for (auto [a, b] : d.arcs())
    if (image[a] >= 0 && image[b] >= 0 && !t.arc(image[a], image[b])) return 0;
  std::vector<int> order;
  for (int a = 0; a < v; ++a)
    if (image[a] < 0) order.push_back(a);
  std::vector<std::vector<std::pair<int, bool>>> nbrs(v);  // (other, out)
  for (auto [a, b] : d.arcs()) {
    nbrs[a].push_back({b, true});
    nbrs[b].push_back({a, false});
  }
  std::function<long long(std::size_t)> rec = [&](std::size_t k) -> long long {
    if (k == order.size()) return 1;
    const int a = order[k];
    long long total = 0;
    for (int x = 0; x < n; ++x) {
      if (used[x]) continue;
      bool ok = true;
      for (auto [b, out] : nbrs[a]) {
        if (image[b] < 0) continue;
        if (out ? !t.arc(x, image[b]) : !t.arc(image[b], x)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      image[a] = x;
      used[x] = 1;
      total += rec(k + 1);
      used[x] = 0;
      image[a] = -1;
    }
    return total;
  };
  return rec(0);
}

StrongTasReport strong_tas_check(const Digraph& d, const std::vector<int>& i_set, int n_max) {
  if (n_max < 1) throw Error("InvalidArgument", "n_max must be positive");
  if (n_max > kMaxStrongTasN) throw Error("CapExceeded", "exhaustive check limited to n <= 5");
  std::set<int> iset(i_set.begin(), i_set.end());
  if (iset.size() != i_set.size()) throw Error("InvalidArgument", "repeated vertex in I");
  for (int a : i_set)
    if (a < 0 || a >= d.v()) throw Error("InvalidArgument", "vertex of I out of range");
  for (auto [a, b] : d.arcs())
    if (iset.count(a) && iset.count(b)) throw Error("NotIndependent", "I contains an arc");

  StrongTasReport rep;
  const int free_vertices = d.v() - static_cast<int>(i_set.size());
  for (int n = 1; n <= n_max && rep.pass; ++n) {
    const BigInt bound = pow(BigInt(n), static_cast<unsigned>(free_vertices));
    for_each_tournament(n, [&](std::uint64_t idx, const Tournament& t) {
      if (!rep.pass) return;
      std::vector<int> emb(i_set.size(), 0);
      std::function<void(std::size_t, std::vector<char>&)> rec = [&](std::size_t k, std::vector<char>& used) {
        if (!rep.pass) return;
        if (k == i_set.size()) {
          std::map<int, int> pinned;
          for (std::size_t q = 0; q < i_set.size(); ++q) pinned[i_set[q]] = emb[q];
          const long long c = count_labeled_copies(d, t, pinned);
          BigInt lhs = BigInt(static_cast<long>(c)) * pow(BigInt(2), static_cast<unsigned>(d.e()));
          if (lhs > bound) {
            rep.pass = false;
            rep.fail_n = n;
            rep.fail_tournament = idx;
            rep.fail_embedding = emb;
            rep.fail_count = c;
            rep.fail_bound = to_string(Rational(bound) / Rational(pow(BigInt(2), static_cast<unsigned>(d.e()))));
          }
          return;
        }
        for (int x = 0; x < n; ++x) {
          if (used[x]) continue;
          used[x] = 1;
          emb[k] = x;
          rec(k + 1, used);
          used[x] = 0;
        }
      };
      std::vector<char> used(n, 0);
      rec(0, used);
    });
    rep.n_checked = n;
  }
  return rep;
}

Digraph amgm_digraph(const Digraph& h, int w, int* v_out) {
  if (w < 0 || w >= h.v()) throw Error("InvalidArgument", "w out of range");
  const int k = h.v();
  std::vector<Arc> arcs;
  for (auto [a, b] : h.arcs()) {
    arcs.push_back({a, b});
    arcs.push_back({a + k, b + k});
  }
  arcs.push_back({w, 2 * k});
  arcs.push_back({2 * k, w + k});
  if (v_out) *v_out = 2 * k;
  return Digraph(2 * k + 1, std::move(arcs));
}

AmgmReport amgm_check(const Digraph& h, int w, int n_max) {
  if (n_max < 1) throw Error("InvalidArgument", "n_max must be positive");
  if (n_max > kMaxStrongTasN) throw Error("CapExceeded", "exhaustive check limited to n <= 5");
  int v = 0;
  const Digraph d = amgm_digraph(h, w, &v);
  AmgmReport rep;
  for (int n = 1; n <= n_max && rep.pass; ++n) {
    for_each_tournament(n, [&](std::uint64_t idx, const Tournament& t) {
      if (!rep.pass) return;
      const BigInt nh(static_cast<long>(count_labeled_copies(h, t, {})));
      for (int x = 0; x < n; ++x) {
        const BigInt nd(static_cast<long>(count_labeled_copies(d, t, {{v, x}})));
        if (4 * nd > nh * nh) {
          rep.pass = false;
          rep.fail_n = n;
          rep.fail_tournament = idx;
          rep.fail_vertex = x;
          return;
        }
      }
    });
    rep.n_checked = n;
  }
  return rep;
}

}  // namespace toursid
