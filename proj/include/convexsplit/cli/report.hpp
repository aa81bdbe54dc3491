#pragma once

// Command dispatch for the convexsplit tool: each command reads its input,
// calls the library and produces a JSON report (and an SVG for planar paths).

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "convexsplit/cli/io.hpp"
#include "convexsplit/cli/svg.hpp"
#include "convexsplit/crossing.hpp"
#include "convexsplit/curves.hpp"
#include "convexsplit/exactgeom.hpp"
#include "convexsplit/kseq.hpp"
#include "convexsplit/ordertype.hpp"
#include "convexsplit/ramsey.hpp"

namespace convexsplit::cli {

inline constexpr const char* schema_version = "1.0";

enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_parse = 2,
  exit_precondition = 3,
  exit_budget = 4,
};

struct RunConfig {
  std::string command;
  std::optional<std::string> input;   // file path
  std::optional<std::string> points;  // inline "x,y;x,y;..."
  std::optional<std::size_t> dim;
  std::optional<std::string> eps;
  std::uint64_t seed = 0;
  /// Largest n handed to an exhaustive oracle; per-command default when empty.
  std::optional<std::size_t> oracle_budget;
  unsigned threads = 1;
  /// Builtin curve name or an inline JSON curve spec.
  std::optional<std::string> curve;
  std::optional<std::size_t> curve_d;
  std::optional<std::size_t> dents;
  std::optional<std::string> depth;
  std::string k_range = "1..5";
  std::optional<std::string> out_json;
  std::optional<std::string> out_svg;
};

struct RunResult {
  int exit_code = exit_ok;
  Json report;
  std::optional<std::string> svg;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{
      "verify-gp", "homog",           "flip",   "crossings", "decompose",
      "sample",    "decompose-curve", "reduce", "bounds",    "ramsey"};
  return names;
}

/// An exhaustive oracle was asked to run on more points than allowed.
class OracleBudgetError : public Error {
public:
  OracleBudgetError(std::size_t n, std::size_t budget)
      : Error("input has " + std::to_string(n) + " points, oracle budget is " +
              std::to_string(budget) + " (raise --oracle-budget)") {}
};

namespace detail {

inline Json indices_json(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto i : v) a.push_back(i);
  return a;
}

inline Json signs_json(const std::vector<int>& v) {
  Json a = Json::array();
  for (auto s : v) a.push_back(s);
  return a;
}

inline Json polylines_json(const PointSeq& seq, const std::vector<Piece>& pieces) {
  Json lines = Json::array();
  for (const auto& pc : pieces) {
    Json line = Json::array();
    for (std::size_t i = pc.first; i <= pc.last; ++i) {
      Json p = Json::array();
      for (const auto& c : seq[i].coords()) p.push_back(c.get_d());
      line.push_back(std::move(p));
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

inline std::pair<std::size_t, std::size_t> parse_k_range(const std::string& text) {
  auto parse_one = [&](std::string_view s) -> std::size_t {
    s = detail::trim(s);
    if (s.empty() || !convexsplit::detail::all_digits(s)) {
      throw ParseError("malformed --k range '" + text + "' (expected K or A..B)");
    }
    return std::stoul(std::string(s));
  };
  auto dots = text.find("..");
  std::size_t lo, hi;
  if (dots == std::string::npos) {
    lo = hi = parse_one(text);
  } else {
    lo = parse_one(std::string_view(text).substr(0, dots));
    hi = parse_one(std::string_view(text).substr(dots + 2));
  }
  if (lo < 1 || hi < lo) throw ParseError("--k range '" + text + "' must satisfy 1 <= A <= B");
  if (hi > 64) throw ParseError("--k range is limited to k <= 64");
  return {lo, hi};
}

class Runner {
public:
  explicit Runner(const RunConfig& cfg) : cfg_(cfg) {}

  RunResult operator()() {
    RunResult res;
    res.report["schema_version"] = schema_version;
    res.report["command"] = cfg_.command;
    inputs_ = Json::object();
    warnings_ = Json::array();
    auto start = std::chrono::steady_clock::now();
    Json result;
    Json error;
    try {
      result = dispatch(res);
    } catch (const ParseError& e) {
      res.exit_code = exit_parse;
      error = error_json("parse", e.what());
    } catch (const DimensionError& e) {
      res.exit_code = exit_parse;
      error = error_json("dimension", e.what());
    } catch (const GeneralPositionError& e) {
      res.exit_code = exit_precondition;
      error = error_json("general_position", e.what());
      error["witness"] = indices_json(e.witness());
      if (e.projection_dim()) error["projection_dim"] = *e.projection_dim();
    } catch (const SamplingError& e) {
      res.exit_code = exit_precondition;
      error = error_json("sampling", e.what());
      error["cell"] = e.cell();
    } catch (const EdgeOnHyperplaneError& e) {
      res.exit_code = exit_precondition;
      error = error_json("edge_on_hyperplane", e.what());
      error["edge"] = e.edge();
    } catch (const PreconditionError& e) {
      res.exit_code = exit_precondition;
      error = error_json("precondition", e.what());
    } catch (const OracleBudgetError& e) {
      res.exit_code = exit_budget;
      error = error_json("oracle_budget", e.what());
    } catch (const std::exception& e) {
      res.exit_code = exit_failure;
      error = error_json("internal", e.what());
    }
    res.report["inputs"] = inputs_;
    if (res.exit_code == exit_ok) {
      res.report["status"] = "ok";
      res.report["result"] = std::move(result);
    } else {
      res.report["status"] = "error";
      res.report["error"] = std::move(error);
      res.svg.reset();
    }
    if (!warnings_.empty()) res.report["warnings"] = warnings_;
    std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    res.report["timing"] = Json{{"elapsed_ms", elapsed.count()}};
    return res;
  }

private:
  static Json error_json(const char* kind, const char* message) {
    return Json{{"kind", kind}, {"message", message}};
  }

  Json dispatch(RunResult& res) {
    const auto& c = cfg_.command;
    if (c == "verify-gp") return verify_gp();
    if (c == "homog") return homog();
    if (c == "flip") return flip();
    if (c == "crossings") return crossings();
    if (c == "decompose") return decompose_cmd(res);
    if (c == "sample") return sample(res);
    if (c == "decompose-curve") return decompose_curve_cmd(res);
    if (c == "reduce") return reduce_cmd();
    if (c == "bounds") return bounds();
    if (c == "ramsey") return ramsey();
    throw ParseError("unknown command '" + c + "'");
  }

  std::string input_text() {
    if (cfg_.input && cfg_.points) throw ParseError("give either --input or --points, not both");
    if (cfg_.input) {
      inputs_["source"] = "file";
      inputs_["path"] = *cfg_.input;
      return read_file(*cfg_.input);
    }
    if (cfg_.points) {
      inputs_["source"] = "inline";
      return *cfg_.points;
    }
    throw ParseError("command '" + cfg_.command + "' needs --input or --points");
  }

  PointSeq load_points() {
    std::string text = input_text();
    auto in = cfg_.points ? parse_points_inline(text, cfg_.dim) : parse_points(text, cfg_.dim);
    inputs_["dim"] = in.dim;
    inputs_["n"] = in.points.size();
    Json pts = Json::array();
    for (const auto& p : in.points) pts.push_back(point_json(p));
    inputs_["points"] = std::move(pts);
    return PointSeq(in.dim, std::move(in.points));
  }

  std::size_t budget(std::size_t fallback) {
    std::size_t b = cfg_.oracle_budget.value_or(fallback);
    inputs_["oracle_budget"] = b;
    return b;
  }

  void check_budget(std::size_t n, std::size_t fallback) {
    std::size_t b = budget(fallback);
    if (n > b) throw OracleBudgetError(n, b);
  }

  Rational eps() {
    if (!cfg_.eps) throw ParseError("command '" + cfg_.command + "' needs --eps");
    Rational e = parse_rational(*cfg_.eps);
    if (sgn(e) <= 0) throw PreconditionError("--eps must be positive");
    inputs_["eps"] = rational_json(e);
    return e;
  }

  CurveSpec curve() {
    Json spec;
    if (cfg_.curve && !cfg_.curve->empty() && cfg_.curve->front() == '{') {
      spec = parse_json_text(*cfg_.curve);
    } else if (cfg_.curve) {
      spec["curve"] = *cfg_.curve;
      if (cfg_.curve_d) spec["d"] = *cfg_.curve_d;
      if (cfg_.dents) spec["dents"] = *cfg_.dents;
      if (cfg_.depth) spec["depth"] = rational_json(parse_rational(*cfg_.depth));
    } else if (cfg_.input) {
      spec = parse_json_text(read_file(*cfg_.input));
    } else {
      throw ParseError("command '" + cfg_.command + "' needs --curve");
    }
    auto c = curve_from_json(spec);
    inputs_["curve"] = spec;
    inputs_["seed"] = cfg_.seed;
    return c;
  }

  Json verify_gp() {
    auto seq = load_points();
    auto gp = is_general_position(seq);
    Json r{{"general_position", gp.general}};
    if (!gp.general) r["witness"] = indices_json(gp.witness);
    return r;
  }

  Json homog() {
    auto seq = load_points();
    require_general_position(seq);
    auto h = is_order_type_homogeneous(seq);
    Json r{{"homogeneous", h.homogeneous}};
    if (h.sign) r["sign"] = *h.sign;
    if (h.witnesses) {
      r["witnesses"] = Json::array({indices_json((*h.witnesses)[0]), indices_json((*h.witnesses)[1])});
    }
    return r;
  }

  Json flip() {
    std::string text = input_text();
    auto t = detail::trim(text);
    if (!t.empty() && t.front() == '{') {
      auto doc = parse_json_text(t);
      if (doc.contains("signs")) {
        auto s = ksequence_from_json(doc);
        inputs_["k"] = s.k();
        inputs_["n"] = s.size();
        auto v = verify_flip(s);
        Json r{{"flip", v.flip}};
        if (!v.flip) {
          r["witness"] = Json{{"subset", indices_json(v.witness)},
                              {"positions", indices_json(v.positions)},
                              {"signs", signs_json(v.signs)}};
        }
        return r;
      }
    }
    auto in = cfg_.points ? parse_points_inline(text, cfg_.dim) : parse_points(text, cfg_.dim);
    inputs_["dim"] = in.dim;
    inputs_["n"] = in.points.size();
    PointSeq seq(in.dim, std::move(in.points));
    require_general_position(seq);
    auto f = is_flip(seq);
    Json r{{"flip", f.flip}};
    if (f.witness) {
      r["witness"] = Json{{"subset", indices_json(f.witness->subset)},
                          {"positions", indices_json(f.witness->positions)},
                          {"signs", signs_json(f.witness->entries)}};
    }
    return r;
  }

  Json crossings() {
    auto seq = load_points();
    check_budget(seq.size(), 256);
    PolyPath path(seq);
    auto rep = max_crossings(path, cfg_.threads);
    auto h = realize_witness(path, rep.witness);
    Json normal = Json::array();
    for (const auto& c : h.normal()) normal.push_back(rational_json(c));
    return Json{{"max_crossings", rep.max_crossings},
                {"convex", rep.max_crossings <= seq.dim()},
                {"witness",
                 {{"subset", indices_json(rep.witness.subset)},
                  {"perturbed", rep.witness.perturbed},
                  {"sides", signs_json(rep.witness.sides)}}},
                {"hyperplane", {{"normal", normal}, {"offset", rational_json(h.offset())}}}};
  }

  Json pieces_json(const PointSeq& seq, const ConvexDecomposition& dec) {
    Json intervals = Json::array(), signs = Json::array(), cuts = Json::array();
    for (std::size_t j = 0; j < dec.size(); ++j) {
      const auto& pc = dec.pieces[j];
      intervals.push_back(Json::array({pc.first, pc.last}));
      signs.push_back(pc.sign ? Json(*pc.sign) : Json(nullptr));
      if (j + 1 < dec.size()) cuts.push_back(pc.last);
    }
    Json r{{"pieces", dec.size()},
           {"piece_intervals", intervals},
           {"piece_signs", signs},
           {"cut_vertices", cuts},
           {"block_bound", block_bound(seq.dim())}};
    if (seq.dim() >= 3) r["polylines"] = polylines_json(seq, dec.pieces);
    return r;
  }

  void maybe_svg(RunResult& res, const PolyPath& path, const std::vector<Piece>& pieces,
                 const std::string& title) {
    if (!cfg_.out_svg) return;
    if (path.dim() != 2) {
      warnings_.push_back("SVG output is only produced for d = 2; see \"polylines\"");
      return;
    }
    res.svg = render_svg(path, pieces, title);
  }

  Json decompose_cmd(RunResult& res) {
    auto seq = load_points();
    PolyPath path(seq);
    auto dec = decompose(path);
    maybe_svg(res, path, dec.pieces, "convex pieces");
    return pieces_json(seq, dec);
  }

  void certify(Json& r, const PolyPath& path) {
    std::size_t b = budget(60);
    if (path.size() <= b) {
      r["max_crossings"] = max_crossings(path, cfg_.threads).max_crossings;
    }
  }

  Json sample(RunResult& res) {
    auto c = curve();
    auto e = eps();
    auto s = epsilon_sample(c, e, cfg_.seed);
    Json params = Json::array(), pts = Json::array();
    for (const auto& t : s.params) params.push_back(rational_json(t));
    for (const auto& p : s.path.vertices().points()) pts.push_back(point_json(p));
    Json r{{"n", s.params.size()}, {"retries", s.retries}, {"params", params}, {"points", pts}};
    certify(r, s.path);
    maybe_svg(res, s.path, {}, c.name + " sample");
    return r;
  }

  Json decompose_curve_cmd(RunResult& res) {
    auto c = curve();
    auto e = eps();
    auto d = decompose_curve(c, e, cfg_.seed);
    Json cuts = Json::array(), intervals = Json::array();
    for (const auto& t : d.cuts) cuts.push_back(rational_json(t));
    for (const auto& [lo, hi] : d.subintervals) {
      intervals.push_back(Json::array({rational_json(lo), rational_json(hi)}));
    }
    Json r{{"n", d.sample.params.size()},
           {"retries", d.sample.retries},
           {"pieces", d.decomposition.size()},
           {"cuts", cuts},
           {"subintervals", intervals}};
    Json vertex = pieces_json(d.sample.path.vertices(), d.decomposition);
    r["piece_intervals"] = vertex["piece_intervals"];
    r["piece_signs"] = vertex["piece_signs"];
    r["block_bound"] = vertex["block_bound"];
    if (vertex.contains("polylines")) r["polylines"] = vertex["polylines"];
    certify(r, d.sample.path);
    maybe_svg(res, d.sample.path, d.decomposition.pieces, c.name + " convex pieces");
    return r;
  }

  Json reduce_cmd() {
    std::string text = input_text();
    auto t = detail::trim(text);
    std::optional<KSequence> s;
    if (!t.empty() && t.front() == '{') {
      auto doc = parse_json_text(t);
      if (doc.contains("signs")) s = ksequence_from_json(doc);
    }
    if (!s) {
      auto in = cfg_.points ? parse_points_inline(text, cfg_.dim) : parse_points(text, cfg_.dim);
      inputs_["dim"] = in.dim;
      PointSeq seq(in.dim, std::move(in.points));
      require_general_position(seq);
      s = from_points(seq);
    }
    inputs_["k"] = s->k();
    inputs_["n"] = s->size();
    auto red = reduce(*s);
    auto check = check_reduction(red);
    auto gp = greedy_partition(red.sequence);
    Json sizes = Json::array(), original = Json::array();
    for (const auto& b : gp.blocks) sizes.push_back(b.size());
    for (const auto& b : red.original.blocks) original.push_back(Json::array({b.first, b.last}));
    Json r{{"m", red.original.m()},
           {"blocks", original},
           {"kept", indices_json(red.kept)},
           {"reduced_block_sizes", sizes},
           {"check",
            {{"m_original", check.m_original},
             {"m_reduced", check.m_reduced},
             {"same_block_count", check.same_block_count},
             {"block_sizes_ok", check.block_sizes_ok},
             {"last_block_two", check.last_block_two},
             {"window_property", check.window_property},
             {"ok", check.ok()}}}};
    if (check.failing_window) r["check"]["failing_window"] = *check.failing_window;
    return r;
  }

  Json bounds() {
    auto [lo, hi] = parse_k_range(cfg_.k_range);
    inputs_["k"] = cfg_.k_range;
    Json ks = Json::array(), c = Json::array(), b = Json::array();
    for (std::size_t k = lo; k <= hi; ++k) {
      ks.push_back(k);
      c.push_back(rational_json(c_bound(k)));
      b.push_back(block_bound(k));
    }
    return Json{{"k", ks},
                {"c", c},
                {"block_bound", b},
                {"known_bounds",
                 {{"c1", known_bounds.c1},
                  {"c2_le", known_bounds.c2_le},
                  {"M1", known_bounds.M1},
                  {"M2", known_bounds.M2},
                  {"M3_le", known_bounds.M3_le}}}};
  }

  Json ramsey() {
    auto seq = load_points();
    check_budget(seq.size(), 24);
    auto best = longest_ot_homogeneous(seq);
    Json r{{"longest",
            {{"length", best.size()},
             {"indices", indices_json(best.indices)},
             {"sign", best.sign ? Json(*best.sign) : Json(nullptr)}}}};
    if (seq.dim() < 2 || best.size() < 2) return r;
    auto sub = seq.subsequence(best.indices);
    auto to_original = [&](const std::vector<std::size_t>& v) {
      std::vector<std::size_t> out;
      for (auto i : v) out.push_back(best.indices[i]);
      return out;
    };
    ExtractionTrace trace;
    try {
      trace = super_extract(sub);
    } catch (const GeneralPositionError& e) {
      throw GeneralPositionError(e.what(), to_original(e.witness()), e.projection_dim());
    }
    Json stages = Json::array();
    for (const auto& st : trace.stages) {
      stages.push_back(Json{{"k", st.k},
                            {"input_length", st.input_length},
                            {"piece_count", st.piece_count},
                            {"piece", st.piece},
                            {"output", indices_json(to_original(st.output))}});
    }
    auto final_idx = to_original(trace.final);
    r["extraction"] = Json{{"stages", stages},
                           {"final", indices_json(final_idx)},
                           {"length", final_idx.size()},
                           {"super_homogeneous",
                            static_cast<bool>(is_super_ot_homogeneous(seq.subsequence(final_idx)))}};
    return r;
  }

  const RunConfig& cfg_;
  Json inputs_;
  Json warnings_;
};

} // namespace detail

inline RunResult run(const RunConfig& cfg) { return detail::Runner(cfg)(); }

/// Report without the timing field, for determinism comparisons.
inline Json without_timing(Json report) {
  report.erase("timing");
  return report;
}

/// Writes the report and SVG to the configured paths; returns false on I/O failure.
inline bool write_outputs(const RunConfig& cfg, const RunResult& res, std::string* problem = nullptr) {
  auto write = [&](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out && problem) *problem = "cannot write '" + path + "'";
    return static_cast<bool>(out);
  };
  bool ok = true;
  if (cfg.out_json) ok = write(*cfg.out_json, res.report.dump(2) + "\n") && ok;
  if (cfg.out_svg && res.svg) ok = write(*cfg.out_svg, *res.svg) && ok;
  return ok;
}

} // namespace convexsplit::cli
