#pragma once

// In-process command layer: every subcommand is a thin mapping from a
// RunConfig onto a library call plus a deterministic report. No domain
// logic lives here. Timing is the caller's business, never part of the
// report bytes.

#include <json.hpp>

#include "codes.hpp"
#include "geom.hpp"
#include "io.hpp"

namespace scattered {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  u32 p = 0, e = 1, t = 0, r = 0;
  u64 q = 0;  // base field size, alternative to p/e
  std::optional<std::vector<u32>> irr;
  std::optional<std::string> subspace_text;  // matrix text, usually file contents
  std::optional<std::vector<u32>> poly;
  std::optional<std::string> v1, v2;  // splash line, top coordinate strings
  u32 k = 1;                          // blocking fold parameter
  u32 sigma = 0;                      // duality twist
  u32 target = 0;                     // search target dimension
  u32 restarts = 32;
  u64 seed = 1;
  u32 parallel = 1;
  u64 budget_limit = 0;  // 0: SCATTER_BUDGET or library default
  std::string format = "json";
};

struct RunResult {
  int status = 0;
  std::string output;
};

namespace cli_detail {

inline Budget resolve_budget(const RunConfig& cfg) {
  return cfg.budget_limit ? Budget{cfg.budget_limit} : Budget::from_env();
}

inline TowerPtr resolve_tower(const RunConfig& cfg) {
  if (cfg.t == 0) throw std::invalid_argument("--t is required");
  if (cfg.q) {
    if (cfg.p) throw std::invalid_argument("give either --q or --p/--e, not both");
    return make_tower_q(cfg.q, cfg.t, cfg.irr);
  }
  if (!cfg.p) throw std::invalid_argument("base field missing: give --q or --p (with optional --e)");
  return make_tower(cfg.p, cfg.e, cfg.t, cfg.irr);
}

inline DesarguesianSpread resolve_spread(const RunConfig& cfg) {
  if (cfg.r == 0) throw std::invalid_argument("--r is required");
  return DesarguesianSpread(FieldReduction(resolve_tower(cfg), cfg.r));
}

inline Subspace resolve_subspace(const RunConfig& cfg, const DesarguesianSpread& S, const Budget& budget,
                                 bool required) {
  const auto& B = S.reduction().base_space();
  if (cfg.subspace_text) return Subspace::span(B, parse_matrix(B, *cfg.subspace_text));
  if (required) throw std::invalid_argument("--subspace is required for this command");
  return construct_max_scattered(S, budget).U;
}

inline ordered_json params_json(const DesarguesianSpread& S) {
  const Field& base = S.tower().base();
  return ordered_json{{"p", base.characteristic()},
                      {"e", base.degree_over_prime()},
                      {"q", S.q()},
                      {"t", S.t()},
                      {"r", S.r()}};
}

inline ordered_json hist_json(const std::map<u64, u64>& h) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : h) j[std::to_string(k)] = v;
  return j;
}

inline std::map<u64, u64> u32_hist(const std::map<u64, u32>& h) {
  std::map<u64, u64> out;
  for (const auto& [k, v] : h) out[k] = v;
  return out;
}

inline ordered_json linear_set_json(const DesarguesianSpread& S, const LinearSet& L) {
  const VectorSpace& T = S.reduction().top_space();
  ordered_json pts = ordered_json::array();
  for (u64 p : L.points) pts.push_back(vector_to_text(T, p));
  std::map<u64, u64> weight_hist;
  for (const auto& [p, w] : L.weights) ++weight_hist[w];
  return ordered_json{{"rank", L.rank},
                      {"size", L.size()},
                      {"scattered", is_scattered_linear_set(L)},
                      {"points", pts},
                      {"weight_histogram", hist_json(weight_hist)}};
}

inline ordered_json scatter_report_json(const DesarguesianSpread& S, const ScatterReport& rep,
                                        bool maximal_checked) {
  ordered_json j;
  j["dim"] = rep.dim;
  j["scattered"] = rep.scattered;
  j["elements_met"] = rep.elements_met;
  j["max_weight"] = rep.max_weight;
  j["weight_histogram"] = rep.weight_histogram;
  if (maximal_checked) j["maximal"] = rep.maximal;
  j["maximum"] = to_string(rep.maximum);
  j["bounds"] = ordered_json{{"lower_maximal", rep.bounds.lower_maximal},
                             {"upper_general", rep.bounds.upper_general},
                             {"upper_desarguesian", rep.bounds.upper_desarguesian}};
  return j;
}

inline void text_lines(const ordered_json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, val] : j.items()) text_lines(val, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    out += prefix + " = " + j.dump() + "\n";
  } else {
    out += prefix + " = " + j.dump() + "\n";
  }
}

}  // namespace cli_detail

/* deterministic rendering; CSV is available only for commands that carry a
   histogram, passed here as (value, count) rows */
inline std::string emit(const ordered_json& report, const std::string& format,
                        const std::map<u64, u64>* csv_rows = nullptr) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "text") {
    std::string out;
    cli_detail::text_lines(report, "", out);
    return out;
  }
  if (format == "csv") {
    if (!csv_rows) throw std::invalid_argument("csv output is not defined for this command");
    std::string out;
    for (const auto& [k, v] : *csv_rows) out += std::to_string(k) + "," + std::to_string(v) + "\n";
    return out;
  }
  throw std::invalid_argument("unknown format '" + format + "'");
}

inline RunResult run(const RunConfig& cfg) {
  ordered_json j;
  j["schema"] = "1";
  j["command"] = cfg.command;
  int status = 0;
  std::map<u64, u64> csv;
  bool has_csv = false;

  try {
    const Budget budget = cli_detail::resolve_budget(cfg);

    if (cfg.command == "field") {
      auto tw = cli_detail::resolve_tower(cfg);
      const Field& base = tw->base();
      j["params"] = ordered_json{{"p", base.characteristic()}, {"e", base.degree_over_prime()},
                                 {"q", tw->q()}, {"t", tw->t()}};
      j["top_size"] = tw->top_size();
      j["top_modulus"] = tw->top_irreducible();
      j["q_basis"] = tw->q_basis();
      const u64 Q = tw->top_size();
      bool frob_add = true, frob_mul = true, frob_fixes_base = true;
      for (u64 x = 0; x < Q; ++x)
        for (u64 y = 0; y < Q; ++y) {
          if (tw->frobenius(tw->top().add(u32(x), u32(y))) !=
              tw->top().add(tw->frobenius(u32(x)), tw->frobenius(u32(y))))
            frob_add = false;
          if (tw->frobenius(tw->top().mul(u32(x), u32(y))) !=
              tw->top().mul(tw->frobenius(u32(x)), tw->frobenius(u32(y))))
            frob_mul = false;
        }
      u64 fixed = 0;
      std::set<u32> trace_image, norm_image;
      for (u64 x = 0; x < Q; ++x) {
        if (tw->frobenius(u32(x)) == x) ++fixed;
        trace_image.insert(tw->trace(u32(x)));
        if (x) norm_image.insert(tw->norm(u32(x)));
      }
      frob_fixes_base = fixed == tw->q();
      const bool trace_onto = trace_image.size() == tw->q();
      const bool norm_onto = norm_image.size() == tw->q() - 1;
      j["checks"] = ordered_json{{"frobenius_additive", frob_add},
                                 {"frobenius_multiplicative", frob_mul},
                                 {"frobenius_fixes_exactly_base", frob_fixes_base},
                                 {"trace_onto", trace_onto},
                                 {"norm_onto", norm_onto}};
      if (!(frob_add && frob_mul && frob_fixes_base && trace_onto && norm_onto)) status = 1;

    } else if (cfg.command == "spread") {
      auto S = cli_detail::resolve_spread(cfg);
      j["params"] = cli_detail::params_json(S);
      j["element_count"] = S.element_count();
      const bool ok = S.verify_partition(budget);
      j["checks"] = ordered_json{{"partition", ok}};
      if (!ok) status = 1;

    } else if (cfg.command == "analyze") {
      auto S = cli_detail::resolve_spread(cfg);
      auto U = cli_detail::resolve_subspace(cfg, S, budget, true);
      auto rep = analyze(S, U, budget, true, cfg.parallel);
      j["params"] = cli_detail::params_json(S);
      j.update(cli_detail::scatter_report_json(S, rep, true));

    } else if (cfg.command == "extend") {
      auto S = cli_detail::resolve_spread(cfg);
      Subspace U = cfg.subspace_text
                       ? Subspace::span(S.reduction().base_space(),
                                        parse_matrix(S.reduction().base_space(), *cfg.subspace_text))
                       : Subspace::span(S.reduction().base_space(), std::vector<u64>{});
      const u32 start = U.dim();
      Subspace M = maximally_scatter(S, U, budget, cfg.parallel);
      j["params"] = cli_detail::params_json(S);
      j["start_dim"] = start;
      j["final_dim"] = M.dim();
      j["maximal"] = true;
      j["matrix"] = matrix_to_text(M);

    } else if (cfg.command == "search") {
      auto S = cli_detail::resolve_spread(cfg);
      if (cfg.target == 0) throw std::invalid_argument("--target is required");
      auto rep = search_scattered(S, cfg.target, cfg.seed, cfg.restarts, budget);
      j["params"] = cli_detail::params_json(S);
      j["target"] = rep.target;
      j["seed"] = rep.seed;
      j["restarts"] = cfg.restarts;
      j["found"] = rep.found;
      j["best_dim"] = rep.best_dim;
      j["restarts_used"] = rep.restarts_used;
      if (rep.best) j["matrix"] = matrix_to_text(*rep.best);

    } else if (cfg.command == "bounds") {
      if (cfg.r == 0 || cfg.t == 0) throw std::invalid_argument("--r and --t are required");
      const u64 q = cfg.q ? cfg.q : pow_u64(cfg.p, cfg.e, "base size");
      auto b = dim_bounds(cfg.r, cfg.t, q);
      j["params"] = ordered_json{{"r", b.r}, {"t", b.t}, {"q", b.q}};
      j["lower_maximal"] = b.lower_maximal;
      j["upper_general"] = b.upper_general;
      j["upper_desarguesian"] = b.upper_desarguesian;
      j["existence_lower"] = b.existence_lower;
      j["existence_ambiguous"] = b.existence_ambiguous;
      j["corollary"] = b.corollary;
      j["attained_lower"] = b.attained_lower;

    } else if (cfg.command == "linset") {
      auto S = cli_detail::resolve_spread(cfg);
      auto U = cli_detail::resolve_subspace(cfg, S, budget, false);
      j["params"] = cli_detail::params_json(S);
      if (!cfg.subspace_text) j["construction"] = construct_max_scattered(S, budget).method;
      j["linear_set"] = cli_detail::linear_set_json(S, linear_set(S, U, budget));

    } else if (cfg.command == "dual") {
      auto S = cli_detail::resolve_spread(cfg);
      auto U = cli_detail::resolve_subspace(cfg, S, budget, false);
      DualityForm form{cfg.sigma};
      Subspace P = orthogonal_complement(S, U, form, budget);
      j["params"] = cli_detail::params_json(S);
      j["sigma"] = cfg.sigma;
      j["rank"] = U.dim();
      j["dual_rank"] = P.dim();
      j["dual_matrix"] = matrix_to_text(P);
      j["dual_linear_set"] = cli_detail::linear_set_json(S, linear_set(S, P, budget));
      if (cfg.sigma == 0) {
        const bool inv = orthogonal_complement(S, P, form, budget) == U;
        j["checks"] = ordered_json{{"involution", inv}};
        if (!inv) status = 1;
      }

    } else if (cfg.command == "splash") {
      auto tw = cli_detail::resolve_tower(cfg);
      const u32 r = cfg.r ? cfg.r : 3;
      if (!cfg.v1 || !cfg.v2) throw std::invalid_argument("--v1 and --v2 are required");
      const VectorSpace P(tw->top_ptr(), r);
      auto rep = splash(tw, r, parse_vector(P, *cfg.v1), parse_vector(P, *cfg.v2), budget);
      j["params"] = ordered_json{{"q", rep.q}, {"n", rep.n}, {"r", rep.r}};
      j["kind"] = rep.kind;
      j["rational_points_on_line"] = rep.rational_points_on_line;
      j["size"] = rep.points.size();
      const VectorSpace Line(tw->top_ptr(), 2);
      ordered_json pts = ordered_json::array();
      for (u64 p : rep.points) pts.push_back(vector_to_text(Line, p));
      j["points"] = pts;
      std::map<u64, u64> inc_hist;
      for (const auto& [p, c] : rep.hyperplane_incidence) ++inc_hist[c];
      j["incidence_histogram"] = cli_detail::hist_json(inc_hist);
      j["one_hyperplane_each"] = rep.one_hyperplane_each;
      j["rank"] = rep.as_linear_set.rank;
      j["scattered"] = rep.scattered;
      j["checks"] = ordered_json{{"matches_linear_set", rep.matches_linear_set}};
      if (!rep.matches_linear_set) status = 1;

    } else if (cfg.command == "pseudoregulus") {
      auto S = cli_detail::resolve_spread(cfg);
      auto U = cli_detail::resolve_subspace(cfg, S, budget, false);
      auto rep = pseudoregulus(S, U, budget);
      j["params"] = cli_detail::params_json(S);
      j["n"] = rep.n;
      j["linear_set_size"] = rep.L.size();
      j["line_spectrum"] = cli_detail::hist_json(rep.line_spectrum);
      j["secant_count"] = rep.secant_count;
      j["transversal_count"] = rep.transversal_count;
      j["checks"] = ordered_json{{"secants_disjoint", rep.secants_disjoint},
                                 {"secants_cover_once", rep.secants_cover_once},
                                 {"ok", rep.ok}};
      csv = rep.line_spectrum;
      has_csv = true;
      if (!rep.ok) status = 1;

    } else if (cfg.command == "spectrum") {
      auto S = cli_detail::resolve_spread(cfg);
      auto U = cli_detail::resolve_subspace(cfg, S, budget, false);
      auto spec = hyperplane_spectrum(S, U, budget);
      auto [m1, m2] = two_intersection_numbers(S.r(), S.t(), S.q());
      j["params"] = cli_detail::params_json(S);
      j["m1"] = m1;
      j["m2"] = m2;
      j["spectrum"] = cli_detail::hist_json(spec);
      bool two_int = true;
      for (const auto& [sz, cnt] : spec)
        if (sz != m1 && sz != m2) two_int = false;
      j["checks"] = ordered_json{{"two_intersection", two_int}};
      csv = spec;
      has_csv = true;
      if (!two_int) status = 1;

    } else if (cfg.command == "code") {
      auto S = cli_detail::resolve_spread(cfg);
      auto U = cli_detail::resolve_subspace(cfg, S, budget, false);
      auto tc = two_weight_code(S, U, budget);
      j["params"] = cli_detail::params_json(S);
      j["n"] = tc.n;
      j["dim"] = tc.r;
      j["m1"] = tc.m1;
      j["m2"] = tc.m2;
      j["w1"] = tc.w1;
      j["w2"] = tc.w2;
      j["hyperplane_spectrum"] = cli_detail::hist_json(tc.spectrum);
      j["weight_enumerator"] = cli_detail::hist_json(tc.weight_enumerator);
      j["checks"] = ordered_json{{"two_intersection", tc.two_intersection}, {"two_weight", tc.two_weight}};
      csv = tc.weight_enumerator;
      has_csv = true;
      if (!(tc.two_intersection && tc.two_weight)) status = 1;

    } else if (cfg.command == "blocking") {
      auto S = cli_detail::resolve_spread(cfg);
      auto U = cli_detail::resolve_subspace(cfg, S, budget, false);
      auto rep = verify_blocking(S, U, cfg.k, budget);
      j["params"] = cli_detail::params_json(S);
      j["m"] = rep.m;
      j["k"] = rep.k;
      j["subspace_dim"] = rep.subspace_dim;
      j["fold"] = rep.fold;
      j["subspace_count"] = rep.subspace_count;
      j["min_hits"] = rep.min_hits;
      j["histogram"] = cli_detail::hist_json(rep.histogram);
      j["checks"] = ordered_json{{"blocking", rep.ok}};
      csv = rep.histogram;
      has_csv = true;
      if (!rep.ok) status = 1;

    } else if (cfg.command == "mrd") {
      auto tw = cli_detail::resolve_tower(cfg);
      if (!cfg.poly) throw std::invalid_argument("--poly is required");
      LinearizedPolynomial f(tw, *cfg.poly);
      auto C = mrd_from_poly(f, budget);
      DesarguesianSpread S(FieldReduction(tw, 2));
      const bool graph_scattered = is_scattered_linear_set(linear_set(S, graph_subspace(S, f), budget));
      const bool sheekey = sheekey_rank_condition(f, budget);
      const bool criterion = C.size() == pow_u64(C.q, 2 * C.t, "code size") && C.min_distance + 1 == C.t;
      j["params"] = ordered_json{{"q", tw->q()}, {"t", tw->t()}};
      j["poly"] = f.coeffs;
      j["size"] = C.size();
      j["pair_count"] = C.pair_count;
      j["min_distance"] = C.min_distance;
      j["mrd"] = C.is_mrd();
      j["graph_scattered"] = graph_scattered;
      j["checks"] = ordered_json{{"criterion_agrees", graph_scattered == criterion && sheekey == criterion}};
      if (graph_scattered != criterion || sheekey != criterion) status = 1;

    } else if (cfg.command == "hyperoval") {
      auto S = cli_detail::resolve_spread(cfg);
      auto U = cli_detail::resolve_subspace(cfg, S, budget, false);
      auto rep = translation_hyperoval(S, U, budget);
      j["params"] = cli_detail::params_json(S);
      j["order"] = rep.order;
      j["size"] = rep.points.size();
      j["line_spectrum"] = cli_detail::hist_json(rep.line_spectrum);
      j["max_on_line"] = rep.max_on_line;
      j["checks"] = ordered_json{{"hyperoval", rep.ok}};
      csv = rep.line_spectrum;
      has_csv = true;
      if (!rep.ok) status = 1;

    } else if (cfg.command == "cap") {
      auto S = cli_detail::resolve_spread(cfg);
      auto U = cli_detail::resolve_subspace(cfg, S, budget, false);
      auto rep = translation_cap(S, U, budget);
      j["params"] = cli_detail::params_json(S);
      j["size"] = rep.size;
      j["triples"] = rep.triples;
      j["collinear_triples"] = rep.collinear_triples;
      j["is_cap"] = rep.is_cap;
      j["scattered"] = rep.scattered;
      j["checks"] = ordered_json{{"cap_iff_scattered", rep.is_cap == rep.scattered}};
      if (rep.is_cap != rep.scattered) status = 1;

    } else if (cfg.command == "design-check") {
      auto S = cli_detail::resolve_spread(cfg);
      auto rep = design_check(S, budget);
      j["params"] = cli_detail::params_json(S);
      j["points"] = rep.points;
      j["lines"] = rep.lines;
      j["points_per_line"] = rep.points_per_line;
      j["lines_per_point"] = rep.lines_per_point;
      j["parallel_classes"] = rep.parallel_classes;
      j["checks"] = ordered_json{{"pair_coverage_once", rep.pair_coverage_once},
                                 {"parallel_partitions", rep.parallel_partitions},
                                 {"ok", rep.ok}};
      if (!rep.ok) status = 1;

    } else {
      throw std::invalid_argument("unknown command '" + cfg.command + "'");
    }

    return {status, emit(j, cfg.format, has_csv ? &csv : nullptr)};
  } catch (const budget_error& ex) {
    j["error"] = ordered_json{{"kind", "budget"}, {"what", ex.what()}};
    return {3, j.dump(2) + "\n"};
  } catch (const invariant_error& ex) {
    j["error"] = ordered_json{{"kind", "invariant"}, {"what", ex.what()}};
    return {1, j.dump(2) + "\n"};
  } catch (const std::exception& ex) {
    j["error"] = ordered_json{{"kind", "arguments"}, {"what", ex.what()}};
    return {2, j.dump(2) + "\n"};
  }
}

}  // namespace scattered
