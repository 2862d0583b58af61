#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "fracgeo/seminorm.hpp"
#include "fracgeo/spec_lang.hpp"
#include "fracgeo/verify.hpp"

using namespace fracgeo;
namespace fs = std::filesystem;

namespace {
const std::string cli = FRACGEO_CLI_PATH;

fs::path work_dir() {
    fs::path dir = fs::temp_directory_path() / "fracgeo-cli-tests";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    const int rc = std::system((cli + " " + args).c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

std::string slurp(const fs::path& path) {
    std::ifstream is(path);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream os(path);
    os << text;
}

nlohmann::json load_json(const fs::path& path) { return nlohmann::json::parse(slurp(path)); }
} // namespace

TEST_SUITE("cli") {
    TEST_CASE("verify sym reproduces the golden chain") {
        const fs::path dir = work_dir();
        spit(dir / "box.spec", "box_indicator([0],[1],1)\n");
        const fs::path rep = dir / "sym.json";
        const fs::path out = dir / "sym.out";
        const int rc = run("verify sym --spec " + (dir / "box.spec").string() +
                           " --n 1 --s 0.25 --p 2 --m 200 --L 1.25 --out " + rep.string() +
                           " > " + out.string() + " 2>&1");
        CHECK(rc == 0);
        nlohmann::json j = load_json(rep);
        CHECK(j["case"] == "sym");
        CHECK(j["params"]["s"] == 0.25);
        CHECK(j["grid"]["m"] == 200);
        REQUIRE(j["terms"].size() == 3);
        CHECK(j["terms"][0]["name"] == "seminorm");
        CHECK(j["terms"][0]["value"].get<double>() == doctest::Approx(16.0).epsilon(0.03));
        for (const auto& v : j["verdicts"])
            CHECK(v["status"] != "violated-within-uncertainty");
        // The stdout summary names the case when the report goes to a file.
        CHECK(slurp(out).find("sym:") != std::string::npos);
    }

    TEST_CASE("seminorm subcommand matches the library call") {
        const fs::path dir = work_dir();
        const fs::path rep = dir / "norm.json";
        const int rc = run("seminorm --spec 'gaussian([0],0.25,1)' --n 1 --s 0.25 --p 2"
                           " --m 100 --L 1.25 --out " + rep.string() + " > /dev/null");
        CHECK(rc == 0);
        GridFunction f = sample_spec(parse_spec("gaussian([0],0.25,1)"), 1, 1.25, 100);
        KernelPolicy pol;
        auto quad = make_sphere_quadrature(1, 2);
        SeminormResult ref = frac_seminorm(f, f, StarBody::ball(1, 1.0), Params{1, 0.25, 2.0},
                                           DiffMode::abs, pol, quad);
        nlohmann::json j = load_json(rep);
        CHECK(j["case"] == "seminorm");
        CHECK(j["terms"][0]["value"].get<double>() == doctest::Approx(ref.value).epsilon(1e-13));
        CHECK(j["terms"][1]["name"] == "epsilon_used");
        CHECK(j["terms"][1]["value"].get<double>() ==
              doctest::Approx(f.dx() / 2.0).epsilon(1e-12));
    }

    TEST_CASE("dualmix oracle through the command line") {
        const fs::path dir = work_dir();
        const fs::path rep = dir / "dm.json";
        const int rc = run("dualmix --K ball:2 --L ball:1 --alpha -1 --n 2 --out " +
                           rep.string() + " > /dev/null");
        CHECK(rc == 0);
        nlohmann::json j = load_json(rep);
        CHECK(j["case"] == "dualmix");
        CHECK(j["terms"][0]["name"] == "dual_mixed_volume");
        CHECK(j["terms"][0]["value"].get<double>() ==
              doctest::Approx(8.0 * pi_v).epsilon(1e-9));
        CHECK(j["terms"][1]["value"].get<double>() ==
              doctest::Approx(4.0 * pi_v).epsilon(1e-9));
    }

    TEST_CASE("malformed inputs exit with code 2 and a positioned message") {
        const fs::path dir = work_dir();
        const fs::path err = dir / "err.txt";
        int rc = run("seminorm --spec 'gaussian([0],0.2,)' --n 1 2> " + err.string() +
                     " > /dev/null");
        CHECK(rc == 2);
        const std::string msg = slurp(err);
        CHECK(msg.find("error:") != std::string::npos);
        CHECK(msg.find("position") != std::string::npos);
        CHECK(run("seminorm --frobnicate 2> /dev/null > /dev/null") == 2);
        CHECK(run("2> /dev/null > /dev/null") == 2);
        CHECK(run("--help > /dev/null") == 0);
    }

    TEST_CASE("config file feeds the common options") {
        const fs::path dir = work_dir();
        spit(dir / "run.cfg", "s=0.3\nm=120\n");
        const fs::path rep = dir / "cfg.json";
        const int rc = run("seminorm --config " + (dir / "run.cfg").string() +
                           " --spec 'gaussian([0],0.25,1)' --n 1 --p 2 --L 1.25 --out " +
                           rep.string() + " > /dev/null");
        CHECK(rc == 0);
        nlohmann::json j = load_json(rep);
        CHECK(j["params"]["s"] == 0.3);
        CHECK(j["grid"]["m"] == 120);
    }

    TEST_CASE("rearrange writes a loadable grid") {
        const fs::path dir = work_dir();
        const fs::path grid = dir / "star.grid";
        const fs::path out = dir / "rearrange.json";
        const int rc = run("rearrange --spec 'box_indicator([0],[1],1)' --n 1 --m 100"
                           " --L 1.25 --out " + grid.string() + " > " + out.string());
        CHECK(rc == 0);
        GridFunction fs_loaded = read_grid_file(grid.string());
        CHECK(l1_mass(fs_loaded) == doctest::Approx(1.0).epsilon(1e-12));
        nlohmann::json j = nlohmann::json::parse(slurp(out));
        CHECK(j["case"] == "rearrange");
        CHECK(j["terms"][0]["name"] == "mass");
        // The written grid feeds back into other subcommands; its header
        // supplies n/m/L, so none of those need repeating.
        const fs::path semi = dir / "grid-semi.json";
        CHECK(run("seminorm --grid " + grid.string() +
                  " --s 0.25 --p 2 > " + semi.string()) == 0);
        nlohmann::json sj = nlohmann::json::parse(slurp(semi));
        CHECK(sj["params"]["n"] == fs_loaded.n);
        CHECK(sj["grid"]["m"] == fs_loaded.m);
    }

    TEST_CASE("projbody exports a FRACGEO-BODY file with mode and ps headers") {
        const fs::path dir = work_dir();
        const fs::path body = dir / "pi.body";
        const fs::path out = dir / "pi.json";
        const int rc = run("projbody --spec 'box_indicator([0],[1],1)' --n 1 --s 0.25 --p 2"
                           " --m 200 --L 1.25 --mode abs --out " + body.string() +
                           " > " + out.string());
        CHECK(rc == 0);
        std::map<std::string, std::string> headers;
        StarBody K = read_body_file(body.string(), &headers);
        CHECK(headers.at("mode") == "abs");
        CHECK(headers.at("ps") == "0.5");
        CHECK(K.radial(vec(1.0)) == doctest::Approx(1.0 / 64.0).epsilon(0.05));
        nlohmann::json j = nlohmann::json::parse(slurp(out));
        CHECK(j["case"] == "projbody");
        CHECK(j["terms"][0]["name"] == "volume");
        CHECK(j["terms"][0]["value"].get<double>() == doctest::Approx(1.0 / 32.0).epsilon(0.05));
    }

    TEST_CASE("violated verdicts surface as exit code 1") {
        // An indicator is far from the smooth s -> 1 regime: the ratio check
        // fails by design and the process reports it in the exit code.
        const int rc = run("verify limit --spec 'box_indicator([0],[1],1)' --n 1 --p 2"
                           " --m 100 --L 1.25 --s_list 0.5 > /dev/null 2>&1");
        CHECK(rc == 1);
    }
}
