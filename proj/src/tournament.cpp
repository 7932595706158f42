#include "toursid/tournament.hpp"

#include <sstream>

#include "toursid/rng.hpp"

namespace toursid {

Tournament::Tournament(int n, std::vector<unsigned char> adj) : n_(n), adj_(std::move(adj)) {
  if (n < 1) throw Error("InvalidTournament", "a tournament needs at least one vertex");
  if (adj_.size() != static_cast<std::size_t>(n) * n) throw Error("InvalidTournament", "adjacency has wrong size");
  for (int i = 0; i < n; ++i) {
    if (arc(i, i)) throw Error("InvalidTournament", "loops are not allowed");
    for (int j = i + 1; j < n; ++j)
      if (arc(i, j) == arc(j, i))
        throw Error("InvalidTournament",
                    "pair (" + std::to_string(i) + "," + std::to_string(j) + ") must be oriented exactly once");
  }
}

int Tournament::out_degree(int i) const {
  int d = 0;
  for (int j = 0; j < n_; ++j) d += arc(i, j) ? 1 : 0;
  return d;
}

std::uint64_t tournament_count(int n) {
  if (n < 1 || n > kMaxEnumerationN) throw Error("CapExceeded", "tournament enumeration needs 1 <= n <= 7");
  return 1ULL << (n * (n - 1) / 2);
}

Tournament tournament_from_index(int n, std::uint64_t index) {
  const std::uint64_t total = tournament_count(n);
  if (index >= total) throw Error("OutOfRange", "tournament index out of range");
  const int pairs = n * (n - 1) / 2;
  std::vector<unsigned char> adj(static_cast<std::size_t>(n) * n, 0);
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++p) {
      bool forward = (index >> (pairs - 1 - p)) & 1ULL;
      adj[static_cast<std::size_t>(forward ? i : j) * n + (forward ? j : i)] = 1;
    }
  return Tournament(n, std::move(adj));
}

void for_each_tournament(int n, const std::function<void(std::uint64_t, const Tournament&)>& fn) {
  const std::uint64_t total = tournament_count(n);
  for (std::uint64_t idx = 0; idx < total; ++idx) fn(idx, tournament_from_index(n, idx));
}

Tournament random_tournament(int n, std::uint64_t seed) {
  if (n < 1) throw Error("InvalidArgument", "n must be at least 1");
  Rng rng(seed);
  std::vector<unsigned char> adj(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool forward = rng.coin();
      adj[static_cast<std::size_t>(forward ? i : j) * n + (forward ? j : i)] = 1;
    }
  return Tournament(n, std::move(adj));
}

Tournament transitive(int n) {
  if (n < 1) throw Error("InvalidArgument", "n must be at least 1");
  std::vector<unsigned char> adj(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) adj[static_cast<std::size_t>(i) * n + j] = 1;
  return Tournament(n, std::move(adj));
}

Tournament cyclic_triangle() {
  std::vector<unsigned char> adj(9, 0);
  adj[0 * 3 + 1] = adj[1 * 3 + 2] = adj[2 * 3 + 0] = 1;
  return Tournament(3, std::move(adj));
}

int count_cyclic_triangles(const Tournament& t) {
  int count = 0;
  for (int a = 0; a < t.n(); ++a)
    for (int b = a + 1; b < t.n(); ++b)
      for (int c = b + 1; c < t.n(); ++c) {
        bool fwd = t.arc(a, b) && t.arc(b, c) && t.arc(c, a);
        bool bwd = t.arc(b, a) && t.arc(c, b) && t.arc(a, c);
        if (fwd || bwd) ++count;
      }
  return count;
}

Tournament blowup(const Tournament& t, const std::vector<int>& part_sizes, InnerRule inner,
                  std::uint64_t seed) {
  if (static_cast<int>(part_sizes.size()) != t.n())
    throw Error("SizeMismatch", "need one part size per vertex of the base tournament");
  std::vector<int> part;
  for (int k = 0; k < t.n(); ++k) {
    if (part_sizes[k] < 1) throw Error("InvalidArgument", "part sizes must be positive");
    part.insert(part.end(), static_cast<std::size_t>(part_sizes[k]), k);
  }
  const int n = static_cast<int>(part.size());
  Rng rng(seed);
  std::vector<unsigned char> adj(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool forward;
      if (part[i] != part[j]) {
        forward = t.arc(part[i], part[j]);
      } else {
        forward = inner == InnerRule::Transitive ? true : rng.coin();
      }
      adj[static_cast<std::size_t>(forward ? i : j) * n + (forward ? j : i)] = 1;
    }
  return Tournament(n, std::move(adj));
}

WeightedTournament<Rational> with_half_loops(const Tournament& t) {
  const std::size_t n = static_cast<std::size_t>(t.n());
  Matrix<Rational> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) a(i, j) = Rational(1, 2);
      else a(i, j) = t.arc(static_cast<int>(i), static_cast<int>(j)) ? 1 : 0;
    }
  return WeightedTournament<Rational>(std::move(a), true);
}

WeightedTournament<Rational> all_half(std::size_t n) {
  return WeightedTournament<Rational>(Matrix<Rational>(n, Rational(1, 2)), true);
}

namespace {

std::vector<std::string> content_lines(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

int parse_header(const std::string& line, const std::string& keyword) {
  std::istringstream ls(line);
  std::string kw, field;
  ls >> kw >> field;
  if (kw != keyword || field.rfind("n=", 0) != 0)
    throw Error("ParseError", "expected header '" + keyword + " n=<n>'");
  try {
    int n = std::stoi(field.substr(2));
    if (n < 1) throw Error("ParseError", "vertex count must be positive");
    return n;
  } catch (const std::logic_error&) {
    throw Error("ParseError", "bad vertex count in header");
  }
}

}  // namespace

Tournament parse_tournament(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw Error("ParseError", "empty tournament file");
  const int n = parse_header(lines[0], "tournament");
  if (static_cast<int>(lines.size()) != n + 1) throw Error("ParseError", "expected n rows");
  std::vector<unsigned char> adj;
  for (int i = 0; i < n; ++i) {
    std::string row;
    for (char c : lines[i + 1])
      if (c == '0' || c == '1') row.push_back(c);
      else if (c != ' ' && c != '\t' && c != '\r') throw Error("ParseError", "rows may only contain 0 and 1", i + 2);
    if (static_cast<int>(row.size()) != n) throw Error("ParseError", "row has wrong length", i + 2);
    for (char c : row) adj.push_back(c == '1' ? 1 : 0);
  }
  return Tournament(n, std::move(adj));
}

WeightedTournament<Rational> parse_weighted(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw Error("ParseError", "empty weighted tournament file");
  const int n = parse_header(lines[0], "wtournament");
  if (static_cast<int>(lines.size()) != n + 1) throw Error("ParseError", "expected n rows");
  Matrix<Rational> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::istringstream ls(lines[i + 1]);
    std::string tok;
    int j = 0;
    while (ls >> tok) {
      if (j >= n) throw Error("ParseError", "row has too many entries", i + 2);
      a(i, j++) = parse_rational(tok);
    }
    if (j != n) throw Error("ParseError", "row has too few entries", i + 2);
  }
  // Half loops are inferred from the diagonal; an all-zero diagonal means none.
  bool any_nonzero = false;
  for (int i = 0; i < n; ++i) any_nonzero = any_nonzero || a(i, i) != 0;
  return WeightedTournament<Rational>(std::move(a), any_nonzero);
}

std::string format_tournament(const Tournament& t) {
  std::string s = "tournament n=" + std::to_string(t.n()) + "\n";
  for (int i = 0; i < t.n(); ++i) {
    for (int j = 0; j < t.n(); ++j) s.push_back(t.arc(i, j) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

std::string format_weighted(const WeightedTournament<Rational>& w) {
  std::string s = "wtournament n=" + std::to_string(w.n()) + "\n";
  for (std::size_t i = 0; i < w.n(); ++i) {
    for (std::size_t j = 0; j < w.n(); ++j) {
      if (j) s.push_back(' ');
      s += to_string(w(i, j));
    }
    s.push_back('\n');
  }
  return s;
}

}  // namespace toursid
