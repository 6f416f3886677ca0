// Exercises the shared-library C interface end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "pintoc.h"

TEST_CASE("version and error state") {
    CHECK(std::string(pintoc_version()) == "0.1.0");
    CHECK(pintoc_last_error() != nullptr);
}

TEST_CASE("solve through the C API") {
    pintoc_run* run = nullptr;
    const char* cfg = R"({"problem":"heat","r":12,"L":3,"N":8})";
    CHECK(pintoc_solve(cfg, &run) == PINTOC_OK);
    REQUIRE(run != nullptr);
    CHECK(pintoc_run_converged(run) == 1);
    const char* record = pintoc_run_record(run);
    REQUIRE(record != nullptr);
    CHECK(std::string(record).find("\"command\": \"solve\"") != std::string::npos);
    CHECK(pintoc_run_csv(run) == nullptr);         // solve emits no table CSV
    CHECK(pintoc_run_trajectory(run) == nullptr);  // not requested
    pintoc_run_free(run);
}

TEST_CASE("solve with trajectory") {
    pintoc_run* run = nullptr;
    const char* cfg = R"({"problem":"heat","r":8,"L":2,"N":4,"trajectory":true})";
    REQUIRE(pintoc_solve(cfg, &run) == PINTOC_OK);
    const char* traj = pintoc_run_trajectory(run);
    REQUIRE(traj != nullptr);
    CHECK(std::strncmp(traj, "ell,t,", 6) == 0);
    pintoc_run_free(run);
}

TEST_CASE("invalid configurations are rejected with messages") {
    pintoc_run* run = nullptr;
    CHECK(pintoc_solve("{not json", &run) == PINTOC_INVALID_CONFIG);
    CHECK(run == nullptr);
    CHECK(std::string(pintoc_last_error()).find("JSON") != std::string::npos);

    CHECK(pintoc_solve(R"({"r":-3})", &run) == PINTOC_INVALID_CONFIG);
    CHECK(pintoc_table("nope", "{}", &run) == PINTOC_INVALID_CONFIG);
    CHECK(pintoc_table(nullptr, "{}", &run) == PINTOC_INVALID_CONFIG);
    CHECK(pintoc_bound(R"({"problem":"wave"})", &run) == PINTOC_INVALID_CONFIG);
}

TEST_CASE("non-convergence still yields a usable record") {
    pintoc_run* run = nullptr;
    const char* cfg =
        R"({"problem":"heat","r":24,"L":4,"N":8,"precond":"off","gmres_maxit":2,
            "gmres_tol":1e-10})";
    CHECK(pintoc_solve(cfg, &run) == PINTOC_NOT_CONVERGED);
    REQUIRE(run != nullptr);
    CHECK(pintoc_run_converged(run) == 0);
    CHECK(std::string(pintoc_run_record(run)).find("\"converged\": false") !=
          std::string::npos);
    pintoc_run_free(run);
}

TEST_CASE("bound sweep CSV arrives through the C surface") {
    pintoc_run* run = nullptr;
    REQUIRE(pintoc_bound(R"({"problem":"heat","r":20})", &run) == PINTOC_OK);
    const char* csv = pintoc_run_csv(run);
    REQUIRE(csv != nullptr);
    CHECK(std::strncmp(csv, "N,dt,mu_max", 11) == 0);
    pintoc_run_free(run);
}

TEST_CASE("spectrum through the C API") {
    pintoc_run* run = nullptr;
    const char* cfg = R"({"problem":"heat","r":10,"L":2,"N":6,"alpha":1e8,"precond":"off"})";
    REQUIRE(pintoc_spectrum(cfg, &run) == PINTOC_OK);
    const std::string record = pintoc_run_record(run);
    CHECK(record.find("\"cond\"") != std::string::npos);
    pintoc_run_free(run);
}
