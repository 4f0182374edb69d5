#include "tightproj/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tightproj/error.hpp"

namespace tightproj::io {
namespace {

[[noreturn]] void schema(const std::string& what) {
  throw Error(ErrorKind::invalid_input, "json: " + what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) schema(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(what + " must be finite");
  return v;
}

std::size_t count(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) schema(what + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<double> numbers(const Json& j, const std::string& what) {
  if (!j.is_array()) schema(what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& x : j) out.push_back(number(x, what + " entry"));
  return out;
}

const char* side_name(SideCount s) { return s == SideCount::finite ? "finite" : "infinite"; }

SideCount side_from(const Json& j, const std::string& what) {
  if (j == "finite") return SideCount::finite;
  if (j == "infinite") return SideCount::infinite;
  schema(what + " must be \"finite\" or \"infinite\"");
}

Json limit_points_json(const std::vector<LimitPoint>& lps) {
  Json arr = Json::array();
  for (const LimitPoint& lp : lps) {
    arr.push_back({{"value", lp.value}, {"below", side_name(lp.below)}, {"at_or_above", side_name(lp.at_or_above)}});
  }
  return arr;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Json to_json(const FrameSpec& frame) {
  Json vectors = Json::array();
  for (const auto& v : frame.vectors()) vectors.push_back(v);
  return {{"dim", frame.dim()}, {"vectors", std::move(vectors)}};
}

FrameSpec frame_from_json(const Json& j) {
  const std::size_t dim = count(field(j, "dim"), "dim");
  const Json& vs = field(j, "vectors");
  if (!vs.is_array()) schema("vectors must be an array");
  std::vector<std::vector<double>> vectors;
  for (const Json& v : vs) vectors.push_back(numbers(v, "frame vector"));
  return FrameSpec(dim, std::move(vectors));
}

Json to_json(const Projection& p) {
  Json cols = Json::array();
  for (std::size_t k = 0; k < p.rank(); ++k) cols.push_back(p.basis().column(k));
  return {{"dim", p.dim()}, {"rank", p.rank()}, {"basis_columns", std::move(cols)}};
}

Projection projection_from_json(const Json& j) {
  const std::size_t dim = count(field(j, "dim"), "dim");
  const std::size_t rank = count(field(j, "rank"), "rank");
  const Json& cols = field(j, "basis_columns");
  if (!cols.is_array() || cols.size() != rank) schema("basis_columns must hold `rank` columns");
  if (rank > dim) schema("rank exceeds dim");
  Matrix basis(dim, rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const std::vector<double> c = numbers(cols[k], "basis column");
    if (c.size() != dim) schema("basis column " + std::to_string(k) + " must have dim entries");
    for (std::size_t i = 0; i < dim; ++i) basis(i, k) = c[i];
  }
  return Projection::from_basis(std::move(basis));
}

Json to_json(const SpectrumModel& model) {
  Json params = std::visit(
      overloaded{
          [](const ExplicitTail& f) -> Json { return {{"head", f.head}, {"tail", f.tail}}; },
          [](const HarmonicShift& f) -> Json { return {{"beta", f.beta}, {"c", f.c}, {"p", f.p}}; },
          [](const Alternating& f) -> Json { return {{"beta", f.beta}, {"c", f.c}, {"p", f.p}}; },
          [](const TwoCluster& f) -> Json {
            return {{"beta1", f.beta1}, {"c1", f.c1}, {"beta2", f.beta2}, {"c2", f.c2}};
          },
          [](const CompactDecay& f) -> Json { return {{"c", f.c}, {"r", f.r}}; },
      },
      model.family());
  return {{"family", model.family_name()},
          {"params", std::move(params)},
          {"limit_points", limit_points_json(model.limit_points())}};
}

SpectrumModel model_from_json(const Json& j) {
  const Json& fam = field(j, "family");
  if (!fam.is_string()) schema("family must be a string");
  const std::string name = fam.get<std::string>();
  const Json& p = field(j, "params");
  auto num = [&](const char* key) { return number(field(p, key), std::string("params.") + key); };

  SequenceFamily family;
  if (name == "ExplicitTail") {
    family = ExplicitTail{numbers(field(p, "head"), "params.head"), num("tail")};
  } else if (name == "HarmonicShift") {
    family = HarmonicShift{num("beta"), num("c"), num("p")};
  } else if (name == "Alternating") {
    family = Alternating{num("beta"), num("c"), num("p")};
  } else if (name == "TwoCluster") {
    family = TwoCluster{num("beta1"), num("c1"), num("beta2"), num("c2")};
  } else if (name == "CompactDecay") {
    family = CompactDecay{num("c"), num("r")};
  } else {
    schema("unknown family \"" + name + "\"");
  }

  const Json& lps = field(j, "limit_points");
  if (!lps.is_array()) schema("limit_points must be an array");
  std::vector<LimitPoint> points;
  for (const Json& lp : lps) {
    points.push_back({number(field(lp, "value"), "limit point value"),
                      side_from(field(lp, "below"), "limit point below"),
                      side_from(field(lp, "at_or_above"), "limit point at_or_above")});
  }
  return SpectrumModel::make(std::move(family), std::move(points));
}

Json to_json(const MultOpSpec& spec) {
  Json pieces = Json::array();
  for (const auto& in : spec.inputs()) pieces.push_back({{"end", in.end}, {"coeffs", in.coeffs}});
  return {{"domain", {spec.lo(), spec.hi()}}, {"pieces", std::move(pieces)}};
}

MultOpSpec multop_from_json(const Json& j) {
  const std::vector<double> domain = numbers(field(j, "domain"), "domain");
  if (domain.size() != 2) schema("domain must be [a, b]");
  const Json& ps = field(j, "pieces");
  if (!ps.is_array()) schema("pieces must be an array");
  std::vector<MultOpSpec::PieceInput> pieces;
  for (const Json& p : ps) {
    pieces.push_back({number(field(p, "end"), "piece end"), numbers(field(p, "coeffs"), "piece coeffs")});
  }
  return MultOpSpec::make(domain[0], domain[1], std::move(pieces));
}

std::vector<IntervalSet> partition_from_json(const Json& j) {
  std::vector<IntervalSet> out;
  if (!j.is_object() || !j.contains("partition")) return out;
  const Json& sets = j["partition"];
  if (!sets.is_array()) schema("partition must be an array of interval lists");
  for (const Json& s : sets) {
    if (!s.is_array()) schema("partition set must be an array of [lo, hi] pairs");
    std::vector<Interval> parts;
    for (const Json& iv : s) {
      const std::vector<double> ends = numbers(iv, "partition interval");
      if (ends.size() != 2 || !(ends[0] < ends[1])) schema("partition interval must be [lo, hi] with lo < hi");
      parts.push_back({ends[0], ends[1]});
    }
    out.emplace_back(std::move(parts));
  }
  return out;
}

Json to_json(const IntervalSet& s) {
  Json arr = Json::array();
  for (const Interval& iv : s.parts()) arr.push_back({iv.lo, iv.hi});
  return arr;
}

Json to_json(const TightnessCertificate& cert) {
  return {{"alpha", cert.alpha},
          {"rank", cert.rank},
          {"residual_compression", cert.residual_compression},
          {"residual_reconstruction", cert.residual_reconstruction},
          {"tolerance", cert.tolerance},
          {"compression_pass", cert.compression_pass},
          {"reconstruction_pass", cert.reconstruction_pass},
          {"pass", cert.pass},
          {"random_probes", cert.random_probes},
          {"probe_seed", cert.seed},
          {"tool_version", kToolVersion}};
}

Json to_json(const PairingPlan& plan) {
  Json entries = Json::array();
  for (const PlanEntry& e : plan.entries) {
    if (const auto* p = std::get_if<Pair>(&e)) {
      entries.push_back({{"type", "pair"},
                         {"lower", p->lower},
                         {"upper", p->upper},
                         {"weight_lower", p->weight_lower},
                         {"weight_upper", p->weight_upper}});
    } else {
      entries.push_back({{"type", "singleton"}, {"index", std::get<Singleton>(e).index}});
    }
  }
  return {{"alpha", plan.alpha}, {"rank", plan.rank()}, {"entries", std::move(entries)}};
}

Json to_json(const Classification& c) {
  Json w = {{"limit_points", limit_points_json(c.witness.limit_points)}};
  w["beta"] = c.witness.beta ? Json(*c.witness.beta) : Json(nullptr);
  w["k_nonnegative"] = c.witness.nonnegative ? Json(side_name(*c.witness.nonnegative)) : Json(nullptr);
  w["k_nonpositive"] = c.witness.nonpositive ? Json(side_name(*c.witness.nonpositive)) : Json(nullptr);
  w["summary"] = c.witness.summary;
  Json out = {{"verdict", to_string(c.verdict)}};
  out["alpha"] = c.alpha ? Json(*c.alpha) : Json(nullptr);
  out["witness"] = std::move(w);
  return out;
}

Json to_json(const MultOpCertificate& cert) {
  return {{"alpha", cert.alpha},
          {"rank", cert.rank},
          {"diagonal_residual", cert.diagonal_residual},
          {"cross_term_max", cert.cross_term_max},
          {"gram_residual", cert.gram_residual},
          {"tolerance", cert.tolerance},
          {"pass", cert.pass},
          {"tool_version", kToolVersion}};
}

Json to_json(const MultOpTightening& t) {
  Json blocks = Json::array();
  for (std::size_t i = 0; i < t.stage1.functions.size(); ++i) {
    blocks.push_back({{"support", to_json(t.stage1.functions[i].support)},
                      {"coefficient", t.stage1.functions[i].coefficient},
                      {"eigenvalue", t.stage1.eigenvalues[i]}});
  }
  Json out = {{"alpha", t.alpha}};
  if (t.range_pair) {
    const RangePair& rp = *t.range_pair;
    out["range_pair"] = {{"x", rp.x},
                         {"y", rp.y},
                         {"ball_x", {rp.ball_x.lo, rp.ball_x.hi}},
                         {"ball_y", {rp.ball_y.lo, rp.ball_y.hi}}};
  }
  out["blocks"] = std::move(blocks);
  out["plan"] = to_json(t.stage2);
  out["certificate"] = to_json(t.certificate);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_input, path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tightproj::io
