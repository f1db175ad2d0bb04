/*
 * Copyright 2026 The LOFP Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "doctest.h"

#include "json.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
    const std::string command = env + (env.empty() ? "" : " ") + "\"" LOFP_CLI_PATH "\" " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("lofp_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(file(name)) << text;
        return file(name);
    }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("gen") {
    TempDir dir;
    const Result a = run("gen --modes 6 --depth 3 --seed 42 --out " + dir.file("a.json"));
    const Result b = run("gen --modes 6 --depth 3 --seed 42 --out " + dir.file("b.json"));
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    const std::string text = slurp(dir.file("a.json"));
    CHECK(text == slurp(dir.file("b.json")));
    const json doc = json::parse(text);
    CHECK(doc["modes"] == 6);
    CHECK(doc["placements"].size() == 8);

    const Result stdout_gen = run("gen --modes 6 --depth 3 --seed 42");
    CHECK(stdout_gen.out == text);

    CHECK(run("gen --modes 5 --depth 3 --seed 1").code == 1);
    const Result empty = run("gen --modes 4 --depth 0 --seed 1");
    CHECK(empty.code == 0);
    CHECK(json::parse(empty.out)["placements"].empty());
}

TEST_CASE("amplitude") {
    TempDir dir;
    const std::string hom = dir.write(
        "hom.json",
        R"({"modes": 2, "depth": 1, "placements": [{"layer": 1, "top_mode": 1, "theta": 0.78539816339744828, "phi": 0}]})");
    const Result r = run("amplitude --circuit " + hom + " --input 1,1 --output 1,1");
    REQUIRE(r.code == 0);
    const json out = json::parse(r.out);
    CHECK(std::abs(out["re"].get<double>()) <= 1e-15);
    CHECK(std::abs(out["im"].get<double>()) <= 1e-15);
    for (const char* key : {"re", "im", "probability", "work_counter", "peak_table_entries"}) CHECK(out.contains(key));
    CHECK_FALSE(out.contains("wall_seconds"));
    CHECK(json::parse(run("amplitude --timings --circuit " + hom + " --input 1,1 --output 2,0").out).contains("wall_seconds"));

    const Result mismatch = run("amplitude --circuit " + hom + " --input 1,1 --output 2,1");
    CHECK(mismatch.code == 0);
    const json m = json::parse(mismatch.out);
    CHECK(m["probability"] == 0.0);
    CHECK(m.contains("warning"));

    run("gen --modes 6 --depth 5 --seed 9 --out " + dir.file("c.json"));
    const std::string base = "amplitude --circuit " + dir.file("c.json") + " --input 2,0,3,0,0,3 --output 1,2,1,1,2,1";
    const json direct = json::parse(run(base + " --method direct").out);
    const json contraction = json::parse(run(base + " --method contraction").out);
    const json ryser = json::parse(run(base + " --method ryser").out);
    CHECK(std::abs(direct["re"].get<double>() - ryser["re"].get<double>()) <= 1e-10);
    CHECK(std::abs(direct["im"].get<double>() - ryser["im"].get<double>()) <= 1e-10);
    CHECK(std::abs(contraction["re"].get<double>() - ryser["re"].get<double>()) <= 1e-10);
    CHECK(std::abs(contraction["im"].get<double>() - ryser["im"].get<double>()) <= 1e-10);
    CHECK(run(base + " --method direct").out == run(base + " --method direct").out);

    CHECK(run(base + " --method quantum").code == 2);
    CHECK(run("amplitude --circuit " + dir.file("c.json") + " --input 1,1 --output 1,1").code == 2);
    CHECK(run("amplitude --circuit " + dir.file("missing.json") + " --input 1,1 --output 1,1").code == 2);
    CHECK(run("amplitude --circuit " + dir.write("junk.json", "{oops") + " --input 1,1 --output 1,1").code == 2);
}

TEST_CASE("distribution") {
    TempDir dir;
    run("gen --modes 6 --depth 3 --seed 5 --out " + dir.file("c.json"));
    const std::string base = "distribution --circuit " + dir.file("c.json") + " --input 1,1,1,1,1,1";
    const Result r = run(base);
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["outcome_count"] == 462);
    CHECK(doc["outcomes"].size() == 462);
    CHECK(std::abs(doc["total"].get<double>() - 1.0) <= 1e-9);
    CHECK(run(base, "LOFP_THREADS=3").out == r.out);

    const Result csv = run(base + " --format csv --method direct");
    REQUIRE(csv.code == 0);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "state,probability");
    std::getline(lines, line);
    CHECK(line.rfind("\"0,0,0,0,0,6\",", 0) == 0);
    CHECK(run(base + " --format xml").code == 2);
}

TEST_CASE("validate") {
    TempDir dir;
    const Result r = run("validate --modes 6 --suite paper");
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["pass"] == true);
    REQUIRE(doc["cases"].size() == 4);
    for (const json& c : doc["cases"]) CHECK(c["tvd"].get<double>() <= 1e-10);

    CHECK(run("validate --modes 6 --suite paper --method contraction --seed 7").code == 0);

    run("gen --modes 6 --depth 4 --seed 3 --out " + dir.file("c.json"));
    std::string text = slurp(dir.file("c.json"));
    const auto pos = text.find("\"theta\": ") + 9;
    text.replace(pos, text.find(',', pos) - pos, "2.5");
    CHECK(run("validate --circuit " + dir.write("bad.json", text)).code == 1);
    CHECK(run("validate --circuit " + dir.file("c.json")).code == 0);

    CHECK(run("validate --modes 8").code == 2);
    CHECK(run("validate --suite other").code == 2);
}

TEST_CASE("bench") {
    TempDir dir;
    const Result empty = run("bench --spec " + dir.write("empty.json", "{}"));
    CHECK(empty.code == 0);
    CHECK(empty.out == "modes,depth,density,method,seed,wall_seconds,work_counter,peak_table_entries\n");

    const std::string spec = dir.write("spec.json", R"({"sweeps": [{"modes": [4, 8, 12, 16], "depths": [2]}],
                                                       "cases": [{"modes": 7, "depth": 3}]})");
    const Result r = run("bench --spec " + spec + " --out " + dir.file("out.csv"));
    CHECK(r.code == 0);
    std::istringstream lines(slurp(dir.file("out.csv")));
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line == "7,3,1,auto,0,,,");
    std::vector<long> work;
    while (std::getline(lines, line)) {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        REQUIRE(fields.size() == 8);
        work.push_back(std::stol(fields[6]));
    }
    REQUIRE(work.size() == 4);
    for (std::size_t i = 1; i < work.size(); ++i) CHECK(work[i] - work[i - 1] == work[1] - work[0]);

    CHECK(run("bench --spec " + dir.write("bad.json", "[1, 2]")).code == 2);
    CHECK(run("bench").code == 2);
}

TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("gen --modes 4").code == 2);
    CHECK(run("--help").code == 0);
}
