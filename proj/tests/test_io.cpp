#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "model_gen.hpp"
#include "support.hpp"
#include "tightproj/io.hpp"

using namespace tightproj;
using testsupport::error_kind_of;
using io::Json;

namespace {

const std::string kData = TIGHTPROJ_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tightproj");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return kData + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "tightproj_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("property: frame round trip is bit exact") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = uniform_index(rng, 1, 8);
    auto vs = testsupport::random_frame(rng, d, uniform_index(rng, 1, 10)).vectors();
    vs[0][0] = std::nextafter(1.0 / 3.0, 1.0) * std::pow(10.0, uniform(rng, -300.0, 300.0));
    const FrameSpec f(d, vs);
    const std::string text = io::dump(io::to_json(f));
    const FrameSpec g = io::frame_from_json(Json::parse(text));
    CHECK(g.dim() == f.dim());
    CHECK(g.vectors() == f.vectors());
    CHECK(io::dump(io::to_json(g)) == text);
  }
}

TEST_CASE("property: projection round trip is bit exact") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = uniform_index(rng, 1, 8);
    const Projection p = Projection::from_basis(testsupport::random_orthonormal(rng, d, uniform_index(rng, 0, d)));
    const Projection q = io::projection_from_json(Json::parse(io::dump(io::to_json(p))));
    CHECK(q.rank() == p.rank());
    CHECK(q.dim() == p.dim());
    CHECK(max_abs_diff(q.basis(), p.basis()) == 0.0);
  }
}

TEST_CASE("property: spectrum model round trip") {
  std::mt19937_64 rng(97);
  for (testsupport::Family fam : testsupport::kFamilies) {
    for (int draw = 0; draw < 4; ++draw) {
      const SpectrumModel m = testsupport::random_model(rng, fam);
      const std::string text = io::dump(io::to_json(m));
      const SpectrumModel back = io::model_from_json(Json::parse(text));
      CHECK(back.family_name() == m.family_name());
      CHECK(back.truncation(50) == m.truncation(50));
      CHECK(io::dump(io::to_json(back)) == text);
    }
  }
}

TEST_CASE("symbol round trip") {
  const MultOpSpec s = MultOpSpec::make(0.1, 2.0, {{0.7, {0.1, 1.0 / 3.0}}, {2.0, {5.0, -1.0, 1e-7}}});
  const std::string text = io::dump(io::to_json(s));
  const MultOpSpec t = io::multop_from_json(Json::parse(text));
  CHECK(io::dump(io::to_json(t)) == text);
  CHECK(t(1.5) == s(1.5));
}

TEST_CASE("schema violations are invalid input") {
  CHECK(error_kind_of([] { io::frame_from_json(Json::parse(R"({"dim": 2})")); }) == ErrorKind::invalid_input);
  CHECK(error_kind_of([] { io::frame_from_json(Json::parse(R"({"dim": -1, "vectors": []})")); }) ==
        ErrorKind::invalid_input);
  CHECK(error_kind_of([] { io::frame_from_json(Json::parse(R"({"dim": 2, "vectors": [[1, "x"]]})")); }) ==
        ErrorKind::invalid_input);
  CHECK(error_kind_of([] { io::frame_from_json(Json::parse(R"([1, 2])")); }) == ErrorKind::invalid_input);
  CHECK(error_kind_of([] {
          io::projection_from_json(Json::parse(R"({"dim": 2, "rank": 1, "basis_columns": [[1, 1]]})"));
        }) == ErrorKind::invalid_input);
  CHECK(error_kind_of([] {
          io::model_from_json(Json::parse(R"({"family": "Nope", "params": {}, "limit_points": []})"));
        }) == ErrorKind::invalid_input);
  CHECK(error_kind_of([] {
          io::model_from_json(Json::parse(
              R"({"family": "CompactDecay", "params": {"c": 1, "r": 0.5},
                  "limit_points": [{"value": 0, "below": "some", "at_or_above": "infinite"}]})"));
        }) == ErrorKind::invalid_input);
  CHECK(error_kind_of([] {
          io::model_from_json(Json::parse(
              R"({"family": "CompactDecay", "params": {"c": 1, "r": 0.5},
                  "limit_points": [{"value": 1, "below": "finite", "at_or_above": "infinite"}]})"));
        }) == ErrorKind::model);
  CHECK(error_kind_of([] { io::multop_from_json(Json::parse(R"({"domain": [0], "pieces": []})")); }) ==
        ErrorKind::invalid_input);
  CHECK(error_kind_of([] {
          io::partition_from_json(Json::parse(R"({"partition": [[[0.5, 0.2]]]})"));
        }) == ErrorKind::invalid_input);
  CHECK(error_kind_of([] { io::read_json_file("/nonexistent/file.json"); }) == ErrorKind::invalid_input);

  const auto bad = scratch("bad.json");
  write(bad, "{ not json");
  CHECK(error_kind_of([&] { io::read_json_file(bad.string()); }) == ErrorKind::invalid_input);
}

TEST_CASE("cli analyze") {
  const Run a = run({"analyze", data("orthonormal_basis_r4.json")});
  CHECK(a.code == 0);
  const Json ja = Json::parse(a.out);
  CHECK(ja["lower_bound"] == 1.0);
  CHECK(ja["upper_bound"] == 1.0);
  CHECK(ja["verdict"] == "tight");

  const Json jb = Json::parse(run({"analyze", data("e1e1e2.json")}).out);
  CHECK(jb["lower_bound"] == 1.0);
  CHECK(jb["upper_bound"] == 2.0);
  CHECK(jb["verdict"] == "not-tight");

  const Json jc = Json::parse(run({"analyze", data("noproj_d8.json")}).out);
  CHECK(jc["dim"] == 8);
  CHECK(jc["M"] == 8);
  CHECK(jc["lower_bound"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(jc["upper_bound"].get<double>() == doctest::Approx(15.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("cli tighten and verify") {
  const Run a = run({"tighten", data("e1e1e2.json")});
  CHECK(a.code == 0);
  const Json ja = Json::parse(a.out);
  CHECK(ja["alpha"] == 1.5);
  CHECK(ja["projection"]["rank"] == 1);
  CHECK(ja["certificate"]["pass"] == true);
  CHECK(ja["certificate"]["probe_seed"] == kDefaultProbeSeed);
  CHECK(ja["certificate"]["tool_version"] == io::kToolVersion);

  const Json jb = Json::parse(run({"tighten", data("orthonormal_basis_r4.json")}).out);
  CHECK(jb["alpha"] == 1.0);
  CHECK(jb["already_tight"] == true);
  CHECK(jb["projection"]["rank"] == 4);

  std::mt19937_64 rng(12);
  const auto frame_path = scratch("random12x8.json");
  write(frame_path, io::dump(io::to_json(testsupport::random_frame(rng, 8, 12))));
  const Run c = run({"tighten", frame_path.string(), "--tol", "1e-9"});
  CHECK(c.code == 0);
  CHECK(Json::parse(c.out)["projection"]["rank"] == 4);

  const auto out_path = scratch("tighten_out.json");
  const auto proj_path = scratch("proj.json");
  CHECK(run({"tighten", data("e1e1e2.json"), "--out", out_path.string(), "--seed", "5"}).code == 0);
  const Json written = io::read_json_file(out_path.string());
  CHECK(written["certificate"]["probe_seed"] == 5);
  write(proj_path, io::dump(written["projection"]));

  const Run v = run({"verify", data("e1e1e2.json"), proj_path.string(), "--alpha", "1.5"});
  CHECK(v.code == 0);
  CHECK(Json::parse(v.out)["pass"] == true);
  const Run vauto = run({"verify", data("e1e1e2.json"), proj_path.string()});
  CHECK(vauto.code == 0);
  CHECK(Json::parse(vauto.out)["alpha"].get<double>() == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(run({"verify", data("e1e1e2.json"), proj_path.string(), "--alpha", "1.4"}).code == 1);

  const auto ident = scratch("ident2.json");
  write(ident, R"({"dim": 2, "rank": 2, "basis_columns": [[1, 0], [0, 1]]})");
  CHECK(run({"verify", data("e1e1e2.json"), ident.string(), "--alpha", "1.5"}).code == 1);
  CHECK(run({"verify", data("orthonormal_basis_r4.json"), ident.string()}).code == 2);
}

TEST_CASE("cli classify") {
  const Run a = run({"classify", data("noproj_model.json")});
  CHECK(a.code == 3);
  const Json ja = Json::parse(a.out);
  CHECK(ja["verdict"] == "NotProjectable_FK");
  CHECK(ja["witness"]["beta"] == 2.0);

  const Run b = run({"classify", data("two_cluster_model.json")});
  CHECK(b.code == 0);
  CHECK(Json::parse(b.out)["alpha"] == 1.5);

  const Run c = run({"classify", data("compact_model.json")});
  CHECK(c.code == 3);
  CHECK(Json::parse(c.out)["verdict"] == "NotApplicable_Compact");
}

TEST_CASE("cli multop") {
  const Run a = run({"multop", data("identity_dyadic.json")});
  CHECK(a.code == 0);
  const Json ja = Json::parse(a.out);
  CHECK(ja["alpha"] == 0.5);
  CHECK(ja["certificate"]["pass"] == true);

  const Run b = run({"multop", data("identity_symbol.json"), "--n", "16"});
  CHECK(b.code == 0);
  CHECK(Json::parse(b.out)["certificate"]["rank"] == 16);

  CHECK(run({"multop", data("square_symbol.json"), "--n", "8", "--tol", "1e-10"}).code == 0);

  const Run c = run({"multop", data("constant_symbol.json")});
  CHECK(c.code == 2);
  CHECK(c.err.find("not-applicable") != std::string::npos);
}

TEST_CASE("cli exit codes for bad input") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"analyze"}).code == 2);
  CHECK(run({"analyze", "/nonexistent.json"}).code == 2);
  CHECK(run({"tighten", data("e1e1e2.json"), "--alpha", "abc"}).code == 2);
  CHECK(run({"tighten", data("e1e1e2.json"), "--tol", "-1"}).code == 2);
  CHECK(run({"tighten", data("e1e1e2.json"), "--alpha", "3"}).code == 3);
  CHECK(run({"multop", data("identity_symbol.json"), "--n", "1"}).code == 2);
  CHECK(run({"classify", data("e1e1e2.json")}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("reports are byte identical across runs") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"tighten", data("noproj_d8.json")},
           {"classify", data("two_cluster_model.json")},
           {"multop", data("square_symbol.json"), "--n", "8"},
           {"analyze", data("e1e1e2.json")}}) {
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}
