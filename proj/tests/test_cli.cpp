/*
 * This code is part of uqcbound.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "support.hpp"
#include "uqc/cli_app.hpp"
#include "uqc/linalg.hpp"
#include "uqc/matrix_io.hpp"

using namespace uqc;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("uqc");
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult result;
  result.exit_code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

nlohmann::json load_schema(const std::string& name) {
  std::ifstream in(test::source_dir() + "/schemas/" + name);
  REQUIRE(in.good());
  nlohmann::json schema;
  in >> schema;
  return schema;
}

void check_against_schema(const std::string& payload, const std::string& schema_name) {
  const nlohmann::json doc = nlohmann::json::parse(payload);
  std::string error;
  const bool ok = test::validate_schema(doc, load_schema(schema_name), &error);
  INFO(error);
  CHECK(ok);
}

}  // namespace

TEST_CASE("bound reports the documented values") {
  CliResult r = invoke({"bound", "--task", "inversion", "--d", "3", "--format", "json"});
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(std::abs(doc["sdp"]["primal_value"].get<double>() - 8.0) <= 1e-5);
  CHECK(doc["refined_bound"].get<double>() == 9.0);
  CHECK(doc["consistent"].get<bool>());
  check_against_schema(r.out, "uqc-bounds-report-1.schema.json");
}

TEST_CASE("bound output is byte deterministic") {
  const std::vector<std::string> args = {"bound", "--task", "conjugation", "--d",
                                         "3",     "--u0",   "haar:7",      "--format", "json"};
  CliResult first = invoke(args);
  CliResult second = invoke(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("bound accepts subgroups, sweeps and custom expressions") {
  CliResult so = invoke({"bound", "--task", "inversion", "--subgroup", "so", "--d", "3",
                         "--format", "json"});
  CHECK(so.exit_code == 0);
  CHECK(std::abs(nlohmann::json::parse(so.out)["numeric_sdp_value"].get<double>() - 2.0) <= 1e-5);
  check_against_schema(so.out, "uqc-bounds-report-1.schema.json");

  CliResult sweep = invoke({"bound", "--task", "conjugation", "--d-range", "2:4",
                            "--format", "json"});
  CHECK(sweep.exit_code == 0);
  const nlohmann::json arr = nlohmann::json::parse(sweep.out);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 3);
  for (const auto& report : arr) {
    std::string error;
    CHECK(test::validate_schema(report, load_schema("uqc-bounds-report-1.schema.json"), &error));
  }
  CHECK(std::abs(arr[2]["numeric_sdp_value"].get<double>() - 3.0) <= 1e-5);

  // a custom expression equivalent to transposition
  CliResult expr = invoke({"bound", "--f-expr", "conj o inv", "--d", "2", "--format", "json"});
  CHECK(expr.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(expr.out);
  CHECK(std::abs(doc["numeric_sdp_value"].get<double>() - 3.0) <= 1e-5);
  CHECK(doc["task"]["name"] == "custom");
  check_against_schema(expr.out, "uqc-bounds-report-1.schema.json");
}

TEST_CASE("bound reads base points from matrix files") {
  const std::string path = "/tmp/uqc_cli_u0.json";
  save_matrix(path, haar_unitary(3, 5));
  CliResult r = invoke({"bound", "--task", "conjugation", "--d", "3", "--u0", path,
                        "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(std::abs(nlohmann::json::parse(r.out)["numeric_sdp_value"].get<double>() - 2.0) <= 1e-5);
  std::remove(path.c_str());

  const std::string bad_path = "/tmp/uqc_cli_bad_u0.json";
  {
    std::ofstream bad(bad_path);
    bad << "{\"d\": 2, \"entries\": [[[1,0],[0,0]],[[0,0],[2,0]]]}";
  }
  CliResult rejected = invoke({"bound", "--task", "conjugation", "--d", "2", "--u0", bad_path});
  CHECK(rejected.exit_code == 2);
  CHECK(rejected.err.find("not unitary") != std::string::npos);
  std::remove(bad_path.c_str());
}

TEST_CASE("prob-curve emits the documented csv") {
  CliResult r = invoke({"prob-curve", "--task", "transposition", "--d", "2", "--n-max", "2",
                        "--format", "csv"});
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(header == "task,d,N,max_p_sdp,closed_form,canonical,trace_norm_path");
  CHECK(row1.find("transposition,2,1,") == 0);
  CHECK(row1.find("0.25") != std::string::npos);
  CHECK(row2.find("0.64") != std::string::npos);

  CliResult js = invoke({"prob-curve", "--task", "transposition", "--d", "2", "--n-max", "2",
                         "--format", "json"});
  CHECK(js.exit_code == 0);
  check_against_schema(js.out, "uqc-prob-curve-1.schema.json");
}

TEST_CASE("certify and catalysis subcommands") {
  CliResult cert = invoke({"certify", "--task", "so_inversion", "--d", "4", "--format", "json"});
  CHECK(cert.exit_code == 0);
  const nlohmann::json cdoc = nlohmann::json::parse(cert.out);
  CHECK(cdoc["values_match"].get<bool>());
  CHECK(std::abs(cdoc["claimed_value"].get<double>() - 3.0) <= 1e-12);
  check_against_schema(cert.out, "uqc-certificate-1.schema.json");

  CliResult cat = invoke({"catalysis", "--task", "conjugation", "--d", "3", "--format", "json"});
  CHECK(cat.exit_code == 0);
  const nlohmann::json kdoc = nlohmann::json::parse(cat.out);
  CHECK(kdoc["verdict"] == "catalysis_ruled_out");
  check_against_schema(cat.out, "uqc-catalysis-1.schema.json");

  CliResult inconclusive = invoke({"catalysis", "--task", "inversion", "--d", "2",
                                   "--known-n", "4", "--format", "json"});
  CHECK(nlohmann::json::parse(inconclusive.out)["verdict"] == "inconclusive");
}

TEST_CASE("bound attaches a probabilistic slice on request") {
  CliResult r = invoke({"bound", "--task", "transposition", "--d", "2", "--prob-n-max", "1",
                        "--format", "json"});
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.contains("prob_slice"));
  REQUIRE(doc["prob_slice"].size() == 1);
  CHECK(std::abs(doc["prob_slice"][0]["closed_form"].get<double>() - 0.25) <= 1e-12);
  check_against_schema(r.out, "uqc-bounds-report-1.schema.json");

  CliResult csv = invoke({"bound", "--task", "inversion", "--d-range", "2:3", "--format", "csv"});
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.find("task,d,numeric_sdp_value") == 0);
  CHECK(csv.out.find("inversion,2,") != std::string::npos);
  CHECK(csv.out.find("inversion,3,") != std::string::npos);
}

TEST_CASE("derivative-check subcommand") {
  CliResult r = invoke({"derivative-check", "--task", "iteration:2", "--d", "2",
                        "--seeds", "2", "--format", "json"});
  CHECK(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["pass"].get<bool>());
  check_against_schema(r.out, "uqc-derivative-check-1.schema.json");
}

TEST_CASE("sweep output does not depend on the worker count") {
  const std::vector<std::string> args = {"prob-curve", "--task", "transposition", "--d", "2",
                                         "--n-max",    "3",      "--format",      "csv"};
  setenv("UQC_THREADS", "1", 1);
  CliResult serial = invoke(args);
  setenv("UQC_THREADS", "4", 1);
  CliResult parallel = invoke(args);
  unsetenv("UQC_THREADS");
  CHECK(serial.exit_code == 0);
  CHECK(serial.out == parallel.out);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(invoke({"bound", "--task", "frobnicate", "--d", "3"}).exit_code == 2);
  CHECK(invoke({"bound", "--task", "inversion", "--d", "12"}).exit_code == 2);
  CHECK(invoke({"bound", "--task", "inversion", "--f-expr", "inv", "--d", "2"}).exit_code == 2);
  CHECK(invoke({"prob-curve", "--task", "iteration:2", "--d", "2"}).exit_code == 2);
  CHECK(invoke({"certify", "--task", "inversion", "--subgroup", "tensor:2", "--d", "2"})
            .exit_code == 2);
  CHECK(invoke({"nonsense"}).exit_code == 2);
  CliResult usage = invoke({"bound", "--task", "frobnicate", "--d", "3"});
  CHECK(usage.err.find("unknown task") != std::string::npos);
  CHECK(usage.out.empty());
}
