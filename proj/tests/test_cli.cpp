// End-to-end checks of the bmx binary: artifact layout, exit codes, and
// byte-level reproducibility of seeded commands.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bmatrix/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Sandbox {
public:
    Sandbox() {
        dir_ = fs::temp_directory_path() /
               ("bmx_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~Sandbox() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    [[nodiscard]] fs::path path(const std::string& name) const { return dir_ / name; }

    RunResult run(const std::string& args) const {
        const fs::path out = dir_ / "stdout.txt";
        const fs::path err = dir_ / "stderr.txt";
        const std::string cmd = std::string(BMX_CLI_PATH) + " " + args + " > " + out.string() +
                                " 2> " + err.string();
        const int raw = std::system(cmd.c_str());
        RunResult res;
        res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
        res.out = slurp(out);
        res.err = slurp(err);
        return res;
    }

    void write(const std::string& name, const std::string& contents) const {
        std::ofstream f(dir_ / name, std::ios::binary);
        f << contents;
    }

private:
    fs::path dir_;
    static inline int counter_ = 0;
};

}  // namespace

TEST_CASE("train writes the full artifact set for the worked pair") {
    Sandbox box;
    box.write("mem.txt", "1100\n1010\n");
    const auto res = box.run("train " + box.path("mem.txt").string() +
                             " --geometry grid2d --r 2 --out " + box.path("art").string());
    INFO(res.err);
    REQUIRE(res.exit_code == 0);

    CHECK(fs::exists(box.path("art/weights.csv")));
    CHECK(fs::exists(box.path("art/positions.csv")));
    CHECK(fs::exists(box.path("art/sites.csv")));
    CHECK(fs::exists(box.path("art/memories.txt")));
    CHECK(fs::exists(box.path("art/manifest.json")));

    const std::string sites = slurp(box.path("art/sites.csv"));
    CHECK(sites == "memory_index,level,site_index,score,strict\n"
                   "0,2,1,1,1\n0,2,2,1,1\n1,3,1,1,1\n1,3,2,1,1\n");

    const std::string weights = slurp(box.path("art/weights.csv"));
    CHECK(weights == "4\n0,0,0,-2\n0,0,-2,0\n0,-2,0,0\n-2,0,0,0\n");
}

TEST_CASE("train rejects malformed and empty inputs with distinct codes") {
    Sandbox box;
    box.write("bad.txt", "1100\n1210\n");
    const auto parse = box.run("train " + box.path("bad.txt").string() + " --out " +
                               box.path("a").string());
    CHECK(parse.exit_code == 2);
    CHECK(parse.err.find("line 2") != std::string::npos);

    box.write("empty.txt", "");
    const auto empty = box.run("train " + box.path("empty.txt").string() + " --out " +
                               box.path("b").string());
    CHECK(empty.exit_code == 3);

    box.write("dup.txt", "1100\n1100\n");
    const auto dup = box.run("train " + box.path("dup.txt").string() + " --out " +
                             box.path("c").string());
    CHECK(dup.exit_code == 3);

    const auto missing = box.run("train " + box.path("nope.txt").string() + " --out " +
                                 box.path("d").string());
    CHECK(missing.exit_code == 5);
}

TEST_CASE("retrieve recalls the worked pair and validates flags") {
    Sandbox box;
    box.write("mem.txt", "1100\n1010\n");
    REQUIRE(box.run("train " + box.path("mem.txt").string() + " --geometry grid2d --r 2 --out " +
                    box.path("art").string())
                .exit_code == 0);
    const std::string art = " --artifacts " + box.path("art").string();

    const auto ind = box.run("retrieve" + art + " --sites 1,2 --values 10 --strategy independent");
    REQUIRE(ind.exit_code == 0);
    CHECK(ind.out.find("output   1100") != std::string::npos);
    CHECK(ind.out.find("matched  0") != std::string::npos);

    const auto avg = box.run("retrieve" + art + " --sites 1,2 --values 01 --strategy averaged");
    REQUIRE(avg.exit_code == 0);
    CHECK(avg.out.find("output   1010") != std::string::npos);
    CHECK(avg.out.find("matched  1") != std::string::npos);
    CHECK(avg.out.find("order    1 2 0 3") != std::string::npos);

    CHECK(box.run("retrieve" + art + " --sites 1,2 --values 1 --strategy averaged").exit_code ==
          3);
    CHECK(box.run("retrieve" + art + " --sites 1,2 --values 10 --strategy classical").exit_code ==
          3);
    CHECK(box.run("retrieve" + art + " --sites 9 --values 1 --strategy classical").exit_code ==
          3);
    CHECK(box.run("retrieve" + art + " --sites 1 --values 1 --strategy sideways").exit_code == 3);
}

TEST_CASE("retrieve result CSV round-trips through the generic csv layer") {
    Sandbox box;
    box.write("mem.txt", "1100\n1010\n");
    REQUIRE(box.run("train " + box.path("mem.txt").string() + " --geometry grid2d --r 2 --out " +
                    box.path("art").string())
                .exit_code == 0);
    REQUIRE(box.run("retrieve --artifacts " + box.path("art").string() +
                    " --sites 1,2 --values 10 --strategy independent --out " +
                    box.path("res.csv").string())
                .exit_code == 0);
    const std::string csv = slurp(box.path("res.csv"));
    std::istringstream in(csv);
    std::string reserialized;
    for (const auto& line : bmx::io::read_lines(in)) {
        const auto fields = bmx::io::split_fields(line);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) reserialized += ',';
            reserialized += fields[i];
        }
        reserialized += '\n';
    }
    CHECK(reserialized == csv);
    CHECK(csv.find("independent,1;2,10,1100,0,") != std::string::npos);
}

TEST_CASE("retrieve classical matches the library pass-through") {
    Sandbox box;
    box.write("mem.txt", "101\n");
    REQUIRE(box.run("train " + box.path("mem.txt").string() + " --geometry line --r 1 --out " +
                    box.path("art").string())
                .exit_code == 0);
    const auto res = box.run("retrieve --artifacts " + box.path("art").string() +
                             " --sites 0 --values 1 --strategy classical");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("output   101") != std::string::npos);
    CHECK(res.out.find("matched  0") != std::string::npos);
}

TEST_CASE("experiment writes a reproducible CSV") {
    Sandbox box;
    const std::string flags = "experiment --n-list 6,8 --m 3 --r 2 --trials 4"
                              " --strategies averaged,independent --seed 11 --out ";
    const auto first = box.run(flags + box.path("sweep.csv").string());
    INFO(first.err);
    REQUIRE(first.exit_code == 0);
    const std::string csv = slurp(box.path("sweep.csv"));
    CHECK(csv.find("strategy,n,m,r,trials,mean_success,stddev,strict_site_rate,master_seed\n") ==
          0);
    // header + 2 sizes x 2 strategies
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(fs::exists(box.path("sweep.csv.manifest.json")));

    const auto second = box.run(flags + box.path("sweep2.csv").string());
    REQUIRE(second.exit_code == 0);
    CHECK(slurp(box.path("sweep2.csv")) == csv);

    // single-trial runs report zero stddev
    const auto single = box.run("experiment --n-list 6 --m 2 --r 1 --trials 1"
                                " --strategies arbitrary --seed 3 --out " +
                                box.path("one.csv").string());
    REQUIRE(single.exit_code == 0);
    const std::string one = slurp(box.path("one.csv"));
    const std::size_t header_end = one.find('\n');
    const std::string row = one.substr(header_end + 1);
    // stddev is the 7th column
    std::istringstream fields(row);
    std::string field;
    for (int i = 0; i < 7; ++i) std::getline(fields, field, ',');
    CHECK(field == "0");

    CHECK(box.run("experiment --n-list 4,6 --m 2 --r 5 --trials 1 --out " +
                  box.path("x.csv").string())
              .exit_code == 4);
}

TEST_CASE("complexity reports the exact counts") {
    Sandbox box;
    const auto res = box.run("complexity --n 64 --r 4");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("classical_ops  10507520") != std::string::npos);
    CHECK(res.out.find("active_ops     80") != std::string::npos);

    const auto csv = box.run("complexity --n 64 --r 4 --out " + box.path("cost.csv").string());
    REQUIRE(csv.exit_code == 0);
    CHECK(slurp(box.path("cost.csv")) ==
          "n,r,classical_ops,active_ops,ratio\n64,4,10507520,80,131344\n");

    CHECK(box.run("complexity --n 64 --r 0").exit_code == 4);
    CHECK(box.run("complexity --n 4 --r 5").exit_code == 4);
}

TEST_CASE("sitemap renders deterministically and rejects 3-D layouts") {
    Sandbox box;
    box.write("mem.txt", "1100\n1010\n");
    REQUIRE(box.run("train " + box.path("mem.txt").string() + " --geometry grid2d --r 2 --out " +
                    box.path("art").string())
                .exit_code == 0);
    const auto first =
        box.run("sitemap --artifacts " + box.path("art").string() + " --out " +
                box.path("map.svg").string());
    INFO(first.err);
    REQUIRE(first.exit_code == 0);
    const std::string svg = slurp(box.path("map.svg"));
    CHECK(svg.rfind("<svg", 0) == 0);

    REQUIRE(box.run("sitemap --artifacts " + box.path("art").string() + " --out " +
                    box.path("map2.svg").string())
                .exit_code == 0);
    CHECK(slurp(box.path("map2.svg")) == svg);

    // corrupt the site map: header only, no rows
    box.write("art/sites.csv", "memory_index,level,site_index,score,strict\n");
    CHECK(box.run("sitemap --artifacts " + box.path("art").string() + " --out " +
                  box.path("map3.svg").string())
              .exit_code == 3);

    box.write("mem3.txt", "1100\n1010\n");
    REQUIRE(box.run("train " + box.path("mem3.txt").string() +
                    " --geometry uniform3d --r 2 --out " + box.path("art3").string())
                .exit_code == 0);
    CHECK(box.run("sitemap --artifacts " + box.path("art3").string() + " --out " +
                  box.path("map4.svg").string())
              .exit_code == 3);
}

TEST_CASE("replay reproduces training artifacts byte for byte") {
    Sandbox box;
    box.write("mem.txt", "110010\n101001\n011100\n");
    REQUIRE(box.run("train " + box.path("mem.txt").string() +
                    " --geometry uniform2d --seed 77 --r 3 --out " + box.path("art").string())
                .exit_code == 0);
    const auto replay = box.run("replay " + box.path("art/manifest.json").string() + " --out " +
                                box.path("art_replay").string());
    INFO(replay.err);
    REQUIRE(replay.exit_code == 0);
    for (const char* name : {"weights.csv", "positions.csv", "sites.csv", "memories.txt"}) {
        CHECK(slurp(box.path("art") / name) == slurp(box.path("art_replay") / name));
    }
}

TEST_CASE("independent vote combination is reachable from the CLI") {
    Sandbox box;
    box.write("mem.txt", "1100\n1010\n");
    REQUIRE(box.run("train " + box.path("mem.txt").string() + " --geometry grid2d --r 2 --out " +
                    box.path("art").string())
                .exit_code == 0);
    const auto votes = box.run("retrieve --artifacts " + box.path("art").string() +
                               " --sites 1,2 --values 10 --strategy independent --combine votes");
    REQUIRE(votes.exit_code == 0);
    CHECK(votes.out.find("output   ") != std::string::npos);
    CHECK(box.run("retrieve --artifacts " + box.path("art").string() +
                  " --sites 1,2 --values 10 --strategy independent --combine sideways")
              .exit_code == 3);
}

TEST_CASE("experiment sweeps memory counts via --m-list") {
    Sandbox box;
    const auto res = box.run("experiment --n-list 8 --m-list 2,4 --r 2 --trials 2"
                             " --strategies independent --seed 4 --out " +
                             box.path("m.csv").string());
    REQUIRE(res.exit_code == 0);
    const std::string csv = slurp(box.path("m.csv"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 m values
    CHECK(csv.find("independent,8,2,2,") != std::string::npos);
    CHECK(csv.find("independent,8,4,2,") != std::string::npos);
}

TEST_CASE("replay covers the remaining commands and rejects junk") {
    Sandbox box;
    // complexity
    REQUIRE(box.run("complexity --n 10 --r 3 --out " + box.path("c.csv").string()).exit_code ==
            0);
    REQUIRE(box.run("replay " + box.path("c.csv.manifest.json").string() + " --out " +
                    box.path("c2.csv").string())
                .exit_code == 0);
    CHECK(slurp(box.path("c2.csv")) == slurp(box.path("c.csv")));

    // sitemap
    box.write("mem.txt", "1100\n1010\n");
    REQUIRE(box.run("train " + box.path("mem.txt").string() + " --geometry grid2d --r 2 --out " +
                    box.path("art").string())
                .exit_code == 0);
    REQUIRE(box.run("sitemap --artifacts " + box.path("art").string() + " --out " +
                    box.path("map.svg").string())
                .exit_code == 0);
    REQUIRE(box.run("replay " + box.path("map.svg.manifest.json").string() + " --out " +
                    box.path("map2.svg").string())
                .exit_code == 0);
    CHECK(slurp(box.path("map2.svg")) == slurp(box.path("map.svg")));

    // retrieve with a result CSV
    REQUIRE(box.run("retrieve --artifacts " + box.path("art").string() +
                    " --sites 1 --values 1 --strategy classical --out " +
                    box.path("r.csv").string())
                .exit_code == 0);
    REQUIRE(box.run("replay " + box.path("r.csv.manifest.json").string() + " --out " +
                    box.path("r2.csv").string())
                .exit_code == 0);
    CHECK(slurp(box.path("r2.csv")) == slurp(box.path("r.csv")));

    box.write("junk.json", "{not json");
    CHECK(box.run("replay " + box.path("junk.json").string()).exit_code == 2);
    box.write("odd.json", "{\"command\":\"warp\",\"args\":{}}");
    CHECK(box.run("replay " + box.path("odd.json").string()).exit_code == 3);
    CHECK(box.run("replay " + box.path("missing.json").string()).exit_code == 5);
}

TEST_CASE("replay reproduces experiment CSVs byte for byte") {
    Sandbox box;
    const auto run = box.run("experiment --n-list 6 --m 3 --r 2 --trials 3"
                             " --strategies independent --seed 5 --out " +
                             box.path("sweep.csv").string());
    REQUIRE(run.exit_code == 0);
    const auto replay = box.run("replay " + box.path("sweep.csv.manifest.json").string() +
                                " --out " + box.path("sweep_replay.csv").string());
    REQUIRE(replay.exit_code == 0);
    CHECK(slurp(box.path("sweep_replay.csv")) == slurp(box.path("sweep.csv")));
}
