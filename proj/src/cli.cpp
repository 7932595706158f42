#include "toursid/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "toursid/classify.hpp"
#include "toursid/construct.hpp"
#include "toursid/error.hpp"
#include "toursid/hom.hpp"
#include "toursid/search.hpp"
#include "toursid/signed_count.hpp"
#include "toursid/spectral.hpp"
#include "toursid/stochastic.hpp"
#include "toursid/trees.hpp"

namespace toursid::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError {
  std::string message;
};

struct Output {
  bool json = false;
  bool csv = false;
};

void add_output_flags(CLI::App* sub, Output& o) {
  sub->add_flag("--json", o.json, "JSON output");
  sub->add_flag("--csv", o.csv, "CSV output where supported");
}

std::string plain(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const json& j, const Output& o, std::ostream& out) {
  if (o.json) {
    out << j.dump() << "\n";
    return;
  }
  if (j.is_array()) {
    for (const auto& item : j) {
      for (auto it = item.begin(); it != item.end(); ++it) out << it.key() << ": " << plain(it.value()) << "\n";
      out << "\n";
    }
    return;
  }
  for (auto it = j.begin(); it != j.end(); ++it) out << it.key() << ": " << plain(it.value()) << "\n";
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json counts_json(const SignedCounts& c) {
  json j;
  j["c_p3"] = c.c_p3;
  j["c_p5"] = c.c_p5;
  j["c_2p3"] = c.c_2p3;
  j["min_k"] = c.min_k ? json(*c.min_k) : json(nullptr);
  j["c_min_k"] = c.min_k ? json(c.c_min_k) : json(nullptr);
  return j;
}

json arcs_json(const std::vector<Arc>& arcs) {
  json a = json::array();
  for (auto [x, y] : arcs) a.push_back({x, y});
  return a;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stoi(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError{"expected a comma-separated integer list, got '" + text + "'"};
    }
  }
  return out;
}

WeightedTournament<Rational> named_host(const std::string& spec) {
  auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto size_arg = [&]() {
    if (arg.empty()) throw UsageError{"host '" + name + "' needs a size, e.g. " + name + ":3"};
    return parse_int_list(arg).at(0);
  };
  if (name == "transitive") return with_half_loops(transitive(size_arg()));
  if (name == "half") return all_half(static_cast<std::size_t>(size_arg()));
  if (name == "cyclic") return with_half_loops(cyclic_triangle());
  if (name == "K") return k_host();
  if (name == "perturbed-cyclic") return perturbed_cyclic_host(arg.empty() ? Rational(1, 100) : parse_rational(arg));
  throw UsageError{"unknown host '" + spec + "'"};
}

WeightedTournament<Rational> load_host(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    if (line.compare(p, 11, "wtournament") == 0) return parse_weighted(text);
    return with_half_loops(parse_tournament(text));
  }
  throw Error("ParseError", "empty host file");
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed) {
  if (!seed) throw UsageError{"--seed is required for stochastic subcommands"};
  return *seed;
}

std::string cache_path(const std::string& name) {
  const char* dir = std::getenv("TOURSID_CACHE_DIR");
  if (!dir || !*dir) return {};
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tournament Sidorenko workbench"};
  app.name("toursid");
  app.require_subcommand(1);

  Output o;
  std::string pattern, file, host, host_file, mode, which, set_text, parts_text, beta_text = "0";
  std::optional<std::uint64_t> seed;
  int max_n = 5, threads = 1, budget = 0, batches = 100, edges = 0, m_parts = 0, amgm_w = -1;
  int trials = 0;
  long long steps = 0;
  double threshold = 1.0;
  bool best_effort = false, cycle = false, float_out = false, exact = false, sample = false, exhaustive = false;
  std::string delta_text;

  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", seed, "Random seed"); };
  auto add_threads = [&](CLI::App* s) { s->add_option("--threads", threads, "Worker cap")->check(CLI::PositiveNumber); };

  auto* classify_path_cmd = app.add_subcommand("classify-path", "Local classification of an oriented path");
  classify_path_cmd->add_option("pattern", pattern, "Orientation string, e.g. '>><'")->required();
  classify_path_cmd->add_flag("--best-effort", best_effort, "Return Unknown instead of failing preconditions");
  add_output_flags(classify_path_cmd, o);

  auto* classify_cycle_cmd = app.add_subcommand("classify-cycle", "Local classification of an oriented cycle");
  classify_cycle_cmd->add_option("pattern", pattern, "Orientation string of the cycle")->required();
  classify_cycle_cmd->add_flag("--best-effort", best_effort, "Return Unknown instead of failing preconditions");
  add_output_flags(classify_cycle_cmd, o);

  auto* counts_cmd = app.add_subcommand("counts", "Signed subgraph counts of a path or cycle");
  counts_cmd->add_option("pattern", pattern, "Orientation string")->required();
  counts_cmd->add_flag("--cycle", cycle, "Treat the pattern as a cycle");
  add_output_flags(counts_cmd, o);

  auto* hom_cmd = app.add_subcommand("hom", "Homomorphism count into a weighted tournament");
  hom_cmd->add_option("--pattern", pattern, "Path orientation");
  hom_cmd->add_flag("--cycle", cycle, "Pattern is a cycle");
  hom_cmd->add_option("--file", file, "Digraph file");
  hom_cmd->add_option("--host", host, "transitive:N, half:N, cyclic, K, perturbed-cyclic[:delta]");
  hom_cmd->add_option("--host-file", host_file, "Tournament or weighted tournament file");
  hom_cmd->add_flag("--float", float_out, "Also print floating values");
  hom_cmd->add_flag("--exact", exact, "Exact values only (default)");
  add_output_flags(hom_cmd, o);

  auto* expand_cmd = app.add_subcommand("expand", "Polynomial expansion of h_P(J/2 + B)");
  expand_cmd->add_option("pattern", pattern, "Path orientation")->required();
  add_output_flags(expand_cmd, o);

  auto* certify_cmd = app.add_subcommand("certify-sign", "Mechanical sign certificate for a path expansion");
  certify_cmd->add_option("pattern", pattern, "Path orientation")->required();
  add_output_flags(certify_cmd, o);

  auto* kernels_cmd = app.add_subcommand("kernels", "Named skew kernels and their densities");
  kernels_cmd->add_option("--name", which, "Kernel name");
  add_output_flags(kernels_cmd, o);

  auto* certificate_cmd = app.add_subcommand("certificate", "Explicit 6-edge certificates");
  certificate_cmd->add_option("--which", which, "transitive or perturbed")->check(CLI::IsMember({"transitive", "perturbed"}));
  certificate_cmd->add_option("--delta", delta_text, "Perturbation for the cyclic host");
  add_output_flags(certificate_cmd, o);

  auto* verify_cmd = app.add_subcommand("verify", "Search for TS/TAS violations");
  verify_cmd->add_option("--mode", mode, "tas or ts")->required()->check(CLI::IsMember({"tas", "ts"}));
  verify_cmd->add_option("--pattern", pattern, "Path orientation");
  verify_cmd->add_option("--file", file, "Digraph or tree file");
  verify_cmd->add_option("--max-n", max_n, "Largest exhaustive host size");
  verify_cmd->add_option("--budget", budget, "Optimizer restarts per host size");
  add_seed(verify_cmd);
  add_threads(verify_cmd);
  add_output_flags(verify_cmd, o);

  auto* orient_cmd = app.add_subcommand("orient-tree", "TAS orientation of a tree");
  orient_cmd->add_option("--file", file, "Tree file")->required();
  add_output_flags(orient_cmd, o);

  auto* iso_cmd = app.add_subcommand("iso-pair", "Find an isomorphic pair in a tree");
  iso_cmd->add_option("--file", file, "Tree file")->required();
  add_output_flags(iso_cmd, o);

  auto* strong_cmd = app.add_subcommand("strong-tas", "Exhaustive strong TAS or AM-GM check");
  strong_cmd->add_option("--file", file, "Digraph file")->required();
  strong_cmd->add_option("--set", set_text, "Independent set, comma separated");
  strong_cmd->add_option("--amgm", amgm_w, "Run the AM-GM check with this vertex as w");
  strong_cmd->add_option("--max-n", max_n, "Largest tournament size");
  add_output_flags(strong_cmd, o);

  auto* lyap_cmd = app.add_subcommand("lyapunov", "Lyapunov exponent and ratio chain");
  lyap_cmd->add_option("--mode", mode, "recurrence, fg or ratio")->required()->check(CLI::IsMember({"recurrence", "fg", "ratio"}));
  lyap_cmd->add_option("--beta", beta_text, "Recurrence coefficient");
  lyap_cmd->add_option("--steps", steps, "Number of steps")->required();
  lyap_cmd->add_option("--batches", batches, "Batch count for the CI");
  add_seed(lyap_cmd);
  add_output_flags(lyap_cmd, o);

  auto* fg_cmd = app.add_subcommand("fg", "The (f,g) process");
  fg_cmd->add_option("pattern", pattern, "Path orientation");
  fg_cmd->add_flag("--sample", sample, "Sample random orientations");
  fg_cmd->add_flag("--exhaustive", exhaustive, "Exact average over all orientations");
  fg_cmd->add_option("--steps", steps, "Path length for --sample/--exhaustive");
  fg_cmd->add_option("--trials", trials, "Number of samples");
  fg_cmd->add_option("--threshold", threshold, "Threshold for x_n");
  add_seed(fg_cmd);
  add_threads(fg_cmd);
  add_output_flags(fg_cmd, o);

  auto* walk_cmd = app.add_subcommand("localwalk", "Classify every orientation of a path");
  walk_cmd->add_option("--edges", edges, "Number of edges")->required();
  add_output_flags(walk_cmd, o);

  auto* sparse_cmd = app.add_subcommand("sparse", "Sparse graph without a TAS orientation");
  sparse_cmd->add_option("--parts", parts_text, "Part sizes, comma separated");
  sparse_cmd->add_option("--m", m_parts, "Number of unit parts");
  add_output_flags(sparse_cmd, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o1, o2;
    const int code = app.exit(e, o1, o2);
    out << o1.str();
    err << o2.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (classify_path_cmd->parsed()) {
      const auto orient = parse_orientation(pattern);
      auto c = classify_path(orient, best_effort);
      json j;
      j["input"] = pattern;
      j["v"] = orient.size() + 1;
      j["e"] = orient.size();
      j["counts"] = counts_json(c.counts);
      j["verdict"] = to_string(c.verdict);
      j["rule"] = c.rule;
      j["preconditions_met"] = c.preconditions_met;
      emit(j, o, out);
    } else if (classify_cycle_cmd->parsed()) {
      auto cyc = make_cycle(parse_orientation(pattern));
      auto c = classify_cycle(cyc, best_effort);
      json j;
      j["input"] = pattern;
      j["v"] = cyc.length();
      j["e"] = cyc.length();
      j["counts"] = counts_json(c.counts);
      j["verdict"] = to_string(c.verdict);
      j["rule"] = c.rule;
      j["flips"] = cyc.flips();
      j["preconditions_met"] = c.preconditions_met;
      emit(j, o, out);
    } else if (counts_cmd->parsed()) {
      auto orient = parse_orientation(pattern);
      json j;
      j["pattern"] = pattern;
      j["kind"] = cycle ? "cycle" : "path";
      json c = counts_json(cycle ? cycle_counts(make_cycle(orient)) : path_counts(orient));
      for (auto it = c.begin(); it != c.end(); ++it) j[it.key()] = it.value();
      emit(j, o, out);
    } else if (hom_cmd->parsed()) {
      if (host.empty() == host_file.empty()) throw UsageError{"give exactly one of --host and --host-file"};
      if (pattern.empty() == file.empty()) throw UsageError{"give exactly one of --pattern and --file"};
      const auto a = host.empty() ? load_host(read_file(host_file)) : named_host(host);
      Digraph d;
      json j;
      if (!pattern.empty()) {
        const auto orient = parse_orientation(pattern);
        d = cycle ? cycle_digraph(make_cycle(orient)) : path_digraph(orient);
        j["pattern"] = pattern;
      } else {
        d = parse_digraph(read_file(file));
        j["pattern"] = format_digraph(d);
      }
      const auto h = hom(d, a);
      const Rational thr = quasirandom_threshold(a.n(), d.v(), d.e());
      j["v"] = d.v();
      j["e"] = d.e();
      j["n"] = a.n();
      j["raw"] = to_string(h.raw);
      j["density"] = to_string(h.density);
      j["threshold"] = to_string(thr);
      j["comparison"] = h.raw > thr ? "above" : (h.raw < thr ? "below" : "equal");
      if (float_out && !exact) j["raw_float"] = to_double(h.raw);
      emit(j, o, out);
    } else if (expand_cmd->parsed()) {
      const auto p = expand_path(parse_orientation(pattern));
      json j;
      j["pattern"] = pattern;
      j["v"] = p.v;
      j["e"] = p.e;
      j["s_form"] = format_spoly(p);
      j["x_form"] = format_xpoly(p);
      emit(j, o, out);
    } else if (certify_cmd->parsed()) {
      const auto proof = certify_sign(expand_path(parse_orientation(pattern)));
      json j;
      j["pattern"] = pattern;
      j["result"] = to_string(proof.result);
      j["trace"] = proof.trace;
      emit(j, o, out);
    } else if (kernels_cmd->parsed()) {
      std::vector<std::string> names = which.empty() ? named_kernel_names() : std::vector<std::string>{which};
      json arr = json::array();
      for (const auto& name : names) {
        const auto b = named_kernel(name);
        json j;
        j["name"] = name;
        j["n"] = b.n();
        j["t_p3"] = to_string(t_kernel_path(b, 2));
        j["t_p5"] = to_string(t_kernel_path(b, 4));
        j["t_2p3"] = to_string(hom_density(two_p3_pattern(), b));
        j["t_c4"] = to_string(t_kernel_cycle(b, 4));
        j["t_c6"] = to_string(t_kernel_cycle(b, 6));
        j["eigenvalue_moduli"] = eigenvalues(convert<double>(b)).lambdas;
        arr.push_back(j);
      }
      emit(arr, o, out);
    } else if (certificate_cmd->parsed()) {
      const bool perturbed = which == "perturbed" || !delta_text.empty();
      const auto c = perturbed ? perturbed_cyclic_certificate(delta_text.empty() ? Rational(1, 100)
                                                                                 : parse_rational(delta_text))
                               : transitive_triangle_certificate();
      json j = json::parse(certificate_json(c));
      j["host"] = format_weighted(c.host);
      emit(j, o, out);
    } else if (verify_cmd->parsed()) {
      if (pattern.empty() == file.empty()) throw UsageError{"give exactly one of --pattern and --file"};
      if (budget > 0) require_seed(seed);
      Digraph d;
      if (!pattern.empty()) {
        d = path_digraph(parse_orientation(pattern));
      } else {
        const std::string text = read_file(file);
        d = text.find("tree") != std::string::npos && text.find("digraph") == std::string::npos
                ? orient_tree_tas(parse_tree(text)).digraph()
                : parse_digraph(text);
      }
      const auto rep = refute(d, parse_mode(mode), max_n, budget, seed.value_or(0), threads);
      emit(json::parse(refutation_json(rep)), o, out);
    } else if (orient_cmd->parsed()) {
      const auto ori = orient_tree_tas(parse_tree(read_file(file)));
      json j;
      j["v"] = ori.tree.v();
      j["provenance"] = to_string(ori.provenance);
      j["arcs"] = arcs_json(ori.provenance == Provenance::Unknown ? std::vector<Arc>{} : ori.arcs());
      emit(j, o, out);
    } else if (iso_cmd->parsed()) {
      const auto t = parse_tree(read_file(file));
      const auto p = find_isomorphic_pair(t);
      json j;
      j["found"] = p.has_value();
      if (p) {
        j["v"] = p->v;
        j["w"] = p->w;
        j["phi_w"] = p->phi.at(p->w);
        j["h1"] = p->h1;
        j["h2"] = p->h2;
        j["verified"] = verify_isomorphic_pair(t, *p);
      }
      emit(j, o, out);
    } else if (strong_cmd->parsed()) {
      const auto d = parse_digraph(read_file(file));
      json j;
      if (amgm_w >= 0) {
        const auto rep = amgm_check(d, amgm_w, max_n);
        j["check"] = "amgm";
        j["pass"] = rep.pass;
        j["n_checked"] = rep.n_checked;
        if (!rep.pass) {
          j["fail_n"] = *rep.fail_n;
          j["fail_tournament"] = *rep.fail_tournament;
          j["fail_vertex"] = *rep.fail_vertex;
        }
      } else {
        const auto rep = strong_tas_check(d, parse_int_list(set_text), max_n);
        j["check"] = "strong-tas";
        j["pass"] = rep.pass;
        j["n_checked"] = rep.n_checked;
        if (!rep.pass) {
          j["fail_n"] = *rep.fail_n;
          j["fail_tournament"] = *rep.fail_tournament;
          j["fail_embedding"] = rep.fail_embedding;
          j["fail_count"] = rep.fail_count;
          j["fail_bound"] = rep.fail_bound;
        }
      }
      emit(j, o, out);
    } else if (lyap_cmd->parsed()) {
      const std::uint64_t s = require_seed(seed);
      const Rational beta = parse_rational(beta_text);
      if (mode == "ratio") {
        const auto r = ratio_chain(beta, steps, s);
        json j;
        j["beta"] = to_string(beta);
        j["steps"] = r.steps;
        j["support_low"] = r.support.low;
        j["support_high"] = r.support.high;
        j["min_r"] = r.min_r;
        j["max_r"] = r.max_r;
        j["all_inside"] = r.all_inside;
        j["mean_log_r"] = r.mean_log_r;
        j["seed"] = s;
        emit(j, o, out);
      } else {
        const auto est = lyapunov_estimate(mode == "fg" ? LyapunovMode::FG : LyapunovMode::Recurrence, beta, steps, s,
                                           batches);
        if (o.csv) out << lyapunov_csv(est);
        else emit(json::parse(lyapunov_json(est)), o, out);
      }
    } else if (fg_cmd->parsed()) {
      json j;
      if (sample) {
        const std::uint64_t s = require_seed(seed);
        if (trials < 1) throw UsageError{"--trials must be positive"};
        const auto r = sample_fg(static_cast<int>(steps), trials, s, threshold, threads);
        j["steps"] = r.steps;
        j["trials"] = r.trials;
        j["mean_sum"] = r.mean_sum;
        j["stderr_sum"] = r.stderr_sum;
        j["median_log_rate"] = r.median_log_rate;
        j["fraction_above"] = r.fraction_above;
        j["threshold"] = threshold;
        j["seed"] = s;
      } else if (exhaustive) {
        j["steps"] = steps;
        j["mean"] = to_string(exhaustive_fg_mean(static_cast<int>(steps)));
      } else {
        const auto st = fg_process(parse_orientation(pattern));
        j["pattern"] = pattern;
        j["f"] = to_string(st.f);
        j["g"] = to_string(st.g);
        j["sum"] = to_string(Rational(st.f + st.g));
      }
      emit(j, o, out);
    } else if (walk_cmd->parsed()) {
      const std::string cache = cache_path("localwalk-" + std::to_string(edges) + ".json");
      json j;
      bool cached = false;
      if (!cache.empty()) {
        std::ifstream in(cache);
        if (in) {
          std::stringstream ss;
          ss << in.rdbuf();
          j = json::parse(ss.str(), nullptr, false);
          cached = !j.is_discarded() && j.is_object();
        }
      }
      if (!cached) {
        const auto s = localwalk(edges);
        j = json();
        j["edges"] = s.edges;
        j["total"] = s.total;
        j["lts"] = s.lts;
        j["ltas"] = s.ltas;
        j["neither"] = s.neither;
        j["impartial"] = s.impartial;
        j["unknown"] = s.unknown;
        j["zero_p3"] = s.zero_p3;
        j["p_zero"] = to_string(s.p_zero);
        j["p_lts"] = to_string(s.p_lts);
        j["p_ltas"] = to_string(s.p_ltas);
        j["walk_p_zero"] = to_string(walk_fractions(edges - 1).p_zero);
        if (!cache.empty()) {
          std::error_code ec;
          std::filesystem::create_directories(std::filesystem::path(cache).parent_path(), ec);
          std::ofstream(cache) << j.dump();
        }
      }
      if (o.csv) {
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) out << (first ? "" : ",") << it.key(), first = false;
        out << "\n";
        first = true;
        for (auto it = j.begin(); it != j.end(); ++it) out << (first ? "" : ",") << plain(it.value()), first = false;
        out << "\n";
      } else {
        emit(j, o, out);
      }
    } else if (sparse_cmd->parsed()) {
      std::vector<int> parts;
      if (!parts_text.empty()) parts = parse_int_list(parts_text);
      else if (m_parts > 0) parts.assign(m_parts, 1);
      else throw UsageError{"give --parts or --m"};
      const auto g = sparse_non_tas(parts);
      json j;
      j["m"] = g.m;
      j["k"] = g.k;
      j["e"] = g.e;
      j["violates"] = g.violates;
      j["part_of"] = g.part_of;
      json e = json::array();
      for (auto [a, b] : g.edges) e.push_back({a, b});
      j["edges"] = e;
      emit(j, o, out);
    }
  } catch (const UsageError& e) {
    err << e.message << "\n";
    return 2;
  } catch (const Error& e) {
    json j;
    j["error"] = e.kind();
    j["message"] = e.what();
    if (e.detail()) j["detail"] = *e.detail();
    err << j.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace toursid::cli
