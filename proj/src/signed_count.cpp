#include "toursid/signed_count.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "toursid/error.hpp"

namespace toursid {

namespace {

void check_even_components(const Digraph& q) {
  for (const auto& comp : q.components()) {
    std::set<int> in(comp.begin(), comp.end());
    int arcs = 0;
    for (auto [a, b] : q.arcs()) arcs += in.count(a) ? 1 : 0;
    if (arcs % 2 != 0) throw Error("OddComponent", "every pattern component needs an even number of arcs");
  }
}

// Finds underlying isomorphisms from q (non-isolated part) onto an edge subset
// of the host and reports the parity of direction disagreements for each.
class SubsetMatcher {
 public:
  explicit SubsetMatcher(const Digraph& q) : q_(q) {
    for (auto [a, b] : q.arcs()) {
      used_q_.insert(a);
      used_q_.insert(b);
    }
    std::vector<std::vector<int>> nb(q.v());
    for (auto [a, b] : q.arcs()) {
      nb[a].push_back(b);
      nb[b].push_back(a);
    }
    std::set<int> seen;
    for (int s : used_q_) {
      if (seen.count(s)) continue;
      std::vector<int> queue{s};
      seen.insert(s);
      for (std::size_t i = 0; i < queue.size(); ++i) {
        order_.push_back(queue[i]);
        for (int y : nb[queue[i]])
          if (seen.insert(y).second) queue.push_back(y);
      }
    }
    q_degree_.assign(q.v(), 0);
    for (auto [a, b] : q.arcs()) {
      ++q_degree_[a];
      ++q_degree_[b];
    }
  }

  // Signs under every isomorphism onto the subset, or empty if none exists.
  std::vector<int> signs(const std::vector<Arc>& subset, bool all) {
    subset_dir_.clear();
    sub_degree_.clear();
    std::set<int> verts;
    for (auto [a, b] : subset) {
      subset_dir_[{a, b}] = 1;
      verts.insert(a);
      verts.insert(b);
      ++sub_degree_[a];
      ++sub_degree_[b];
    }
    std::vector<int> out;
    if (verts.size() != used_q_.size()) return out;
    verts_.assign(verts.begin(), verts.end());
    phi_.assign(q_.v(), -1);
    taken_.clear();
    all_ = all;
    recurse(0, out);
    return out;
  }

 private:
  bool adjacent(int x, int y) const { return subset_dir_.count({x, y}) || subset_dir_.count({y, x}); }

  bool recurse(std::size_t depth, std::vector<int>& out) {
    if (depth == order_.size()) {
      int disagree = 0;
      for (auto [a, b] : q_.arcs())
        if (!subset_dir_.count({phi_[a], phi_[b]})) ++disagree;
      out.push_back(disagree % 2 == 0 ? 1 : -1);
      return !all_;
    }
    const int x = order_[depth];
    for (int h : verts_) {
      if (taken_.count(h) || sub_degree_[h] != q_degree_[x]) continue;
      bool ok = true;
      for (auto [a, b] : q_.arcs()) {
        int other = a == x ? b : (b == x ? a : -1);
        if (other < 0 || phi_[other] < 0) continue;
        if (!adjacent(h, phi_[other])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      phi_[x] = h;
      taken_.insert(h);
      bool stop = recurse(depth + 1, out);
      taken_.erase(h);
      phi_[x] = -1;
      if (stop) return true;
    }
    return false;
  }

  const Digraph& q_;
  std::set<int> used_q_;
  std::vector<int> order_;
  std::vector<int> q_degree_;
  std::map<std::pair<int, int>, int> subset_dir_;
  std::map<int, int> sub_degree_;
  std::vector<int> verts_;
  std::vector<int> phi_;
  std::set<int> taken_;
  bool all_ = false;
};

template <class Fn>
void for_each_subset(const Digraph& q, const Digraph& host, Fn fn) {
  check_even_components(q);
  if (host.e() > kMaxSubsetHostArcs) throw Error("CapExceeded", "generic signed count is limited to 40 host arcs");
  const int k = q.e();
  const int m = host.e();
  if (k > m) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<Arc> subset(k);
  while (true) {
    for (int i = 0; i < k; ++i) subset[i] = host.arcs()[idx[i]];
    fn(subset);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

long long signed_count(const Digraph& q, const Digraph& host) {
  SubsetMatcher matcher(q);
  long long total = 0;
  for_each_subset(q, host, [&](const std::vector<Arc>& subset) {
    auto s = matcher.signs(subset, false);
    if (!s.empty()) total += s.front();
  });
  return total;
}

std::vector<std::vector<int>> subset_signs(const Digraph& q, const Digraph& host) {
  SubsetMatcher matcher(q);
  std::vector<std::vector<int>> out;
  for_each_subset(q, host, [&](const std::vector<Arc>& subset) {
    auto s = matcher.signs(subset, true);
    if (!s.empty()) out.push_back(std::move(s));
  });
  return out;
}

Digraph two_p3_pattern() { return disjoint_union(directed_path_pattern(2), directed_path_pattern(2)); }

namespace {

int window_sign(const Orientation& o, std::size_t start, int m) {
  int back = 0;
  for (int i = 0; i < m; ++i) back += o[(start + i) % o.size()] == Dir::Backward ? 1 : 0;
  return back % 2 == 0 ? 1 : -1;
}

}  // namespace

long long path_window_count(const Orientation& o, int m) {
  const int e = static_cast<int>(o.size());
  long long total = 0;
  for (int i = 0; i + m <= e; ++i) total += window_sign(o, i, m);
  return total;
}

long long cycle_window_count(const OrientedCycle& c, int m) {
  const int len = static_cast<int>(c.length());
  if (m >= len) return 0;  // a path on m+1 distinct vertices does not fit
  long long total = 0;
  for (int i = 0; i < len; ++i) total += window_sign(c.orientation, i, m);
  return total;
}

SignedCounts path_counts(const Orientation& o) {
  const int e = static_cast<int>(o.size());
  SignedCounts c;
  c.c_p3 = path_window_count(o, 2);
  c.c_p5 = path_window_count(o, 4);
  for (int i = 0; i + 2 <= e; ++i)
    for (int j = i + 3; j + 2 <= e; ++j) c.c_2p3 += window_sign(o, i, 2) * window_sign(o, j, 2);
  for (int k = 3; k <= e / 2; ++k) {
    long long v = path_window_count(o, 2 * k);
    if (v != 0) {
      c.min_k = k;
      c.c_min_k = v;
      break;
    }
  }
  return c;
}

SignedCounts cycle_counts(const OrientedCycle& cyc) {
  const int len = static_cast<int>(cyc.length());
  if (len < 3) throw Error("TooShort", "a cycle needs at least 3 edges");
  SignedCounts c;
  c.c_p3 = cycle_window_count(cyc, 2);
  c.c_p5 = cycle_window_count(cyc, 4);
  // Window i covers vertices i, i+1, i+2; two windows are disjoint iff their
  // cyclic offset lies in [3, len-3].
  for (int i = 0; i < len; ++i)
    for (int j = i + 1; j < len; ++j) {
      int d = j - i;
      if (d >= 3 && d <= len - 3) c.c_2p3 += window_sign(cyc.orientation, i, 2) * window_sign(cyc.orientation, j, 2);
    }
  for (int k = 3; k <= len / 2; ++k) {
    long long v = cycle_window_count(cyc, 2 * k);
    if (v != 0) {
      c.min_k = k;
      c.c_min_k = v;
      break;
    }
  }
  return c;
}

WalkFractions walk_fractions(int steps) {
  if (steps < 1) throw Error("InvalidArgument", "walk needs at least one step");
  WalkFractions w;
  if (steps % 2 == 0) {
    BigInt binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(steps), static_cast<unsigned long>(steps / 2));
    w.p_zero = Rational(binom, pow(BigInt(2), static_cast<unsigned>(steps)));
    w.p_zero.canonicalize();
  } else {
    w.p_zero = 0;
  }
  w.p_pos = (1 - w.p_zero) / 2;
  w.p_neg = w.p_pos;
  return w;
}

}  // namespace toursid
