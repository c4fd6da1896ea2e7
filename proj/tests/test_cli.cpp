#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path =
        (std::filesystem::temp_directory_path() / "objspec_cli_out.txt").string();
    const std::string cmd =
        std::string(OBJSPEC_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, buffer.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("eval prints the xor absolute-value objective for pi_AB") {
    const RunResult r = run_cli("eval --fixture ex_xor --policy pi_AB --objective onmr_abs");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("J = 2") != std::string::npos);
}

TEST_CASE("eval of a zero markov reward prints zero") {
    const std::string env = write_temp("cli_env.json", R"json({
        "states": ["s0"], "actions": ["a0"],
        "transition": {"s0,a0": [{"to": "s0", "p": 1.0}]},
        "initial": [1.0]})json");
    const std::string objective = write_temp("cli_obj.json", R"json({
        "type": "mr", "gamma": 0.9, "reward": {"entries": []}})json");
    const std::string policy = write_temp("cli_policy.json", R"json({
        "action_probs": {"s0": {"a0": 1.0}}})json");
    const RunResult r = run_cli("eval --env " + env + " --policy-file " + policy +
                                " --objective " + objective);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("J = 0") != std::string::npos);
}

TEST_CASE("malformed json exits with the input-error code") {
    const std::string broken = write_temp("cli_broken.json", "{not json");
    const RunResult r = run_cli("eval --env " + broken +
                                " --policy-file x.json --objective y.json");
    CHECK(r.exit_code == 2);
}

TEST_CASE("a formula outside the fragment exits with the capability code") {
    const std::string objective = write_temp("cli_nested.json", R"json({
        "type": "ltl", "formula": "(eventually (always (act a_A)))"})json");
    const RunResult r =
        run_cli("eval --fixture ex_loop --policy pi_A --objective " + objective);
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("hint") != std::string::npos);
}

TEST_CASE("a non-enumerable exact trajectory evaluation exits with the capability code") {
    const std::string objective = write_temp("cli_inmr.json", R"json({
        "type": "inmr", "gamma": 0.5, "wrapper": "identity",
        "reward": {"entries": [{"s": "s0", "a": "a_A", "s'": "s0", "r": 1.0}]}})json");
    const RunResult r =
        run_cli("eval --fixture ex_loop --policy pi_alpha_0.500000 --objective " + objective);
    CHECK(r.exit_code == 3);
}

TEST_CASE("check passes on ex_threshold and rejects unknown names") {
    const RunResult ok = run_cli("check --fixture ex_threshold");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("PASS ex_threshold") != std::string::npos);
    const RunResult missing = run_cli("check --fixture ex_nonexistent");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("hasse dot output is byte-identical across runs") {
    const RunResult r1 = run_cli("hasse --format dot");
    const RunResult r2 = run_cli("hasse --format dot");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out.rfind("digraph", 0) == 0);
    int nodes = 0;
    for (std::size_t pos = r1.out.find("[label="); pos != std::string::npos;
         pos = r1.out.find("[label=", pos + 1))
        nodes++;
    CHECK(nodes == 11);
}

TEST_CASE("list-fixtures names all twelve bundles") {
    const RunResult r = run_cli("list-fixtures");
    CHECK(r.exit_code == 0);
    for (const std::string name :
         {"ex_loop", "ex_two_paths", "ex_single_state", "ex_xor", "ex_five_actions",
          "ex_three_actions_ltl", "ex_threshold", "ex_unvisited", "ex_lex", "ex_three_traj",
          "ex_two_cycles", "ex_rm_counter"})
        CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("a fixture-directory override replaces the environment and is detected") {
    const std::string dir =
        (std::filesystem::temp_directory_path() / "objspec_fixture_override").string();
    std::filesystem::create_directories(dir);
    // same shape as ex_two_paths, but the upper path is rerouted through sB,
    // which breaks the recorded J values
    std::ofstream out(dir + "/ex_two_paths.json");
    out << R"json({"environment": {
        "states": ["s0", "sA", "sB", "sC"],
        "actions": ["a_A", "a_B", "a_C", "a_D", "a_E"],
        "transition": {
            "s0,a_A": [{"to": "sB", "p": 1.0}],
            "s0,a_B": [{"to": "sB", "p": 1.0}],
            "s0,a_C": [{"to": "s0", "p": 1.0}],
            "s0,a_D": [{"to": "s0", "p": 1.0}],
            "s0,a_E": [{"to": "s0", "p": 1.0}],
            "sA,a_A": [{"to": "sA", "p": 1.0}],
            "sA,a_B": [{"to": "sA", "p": 1.0}],
            "sA,a_C": [{"to": "sC", "p": 1.0}],
            "sA,a_D": [{"to": "sA", "p": 1.0}],
            "sA,a_E": [{"to": "sA", "p": 1.0}],
            "sB,a_A": [{"to": "sB", "p": 1.0}],
            "sB,a_B": [{"to": "sB", "p": 1.0}],
            "sB,a_C": [{"to": "sB", "p": 1.0}],
            "sB,a_D": [{"to": "sC", "p": 1.0}],
            "sB,a_E": [{"to": "sB", "p": 1.0}],
            "sC,a_A": [{"to": "sC", "p": 1.0}],
            "sC,a_B": [{"to": "sC", "p": 1.0}],
            "sC,a_C": [{"to": "sC", "p": 1.0}],
            "sC,a_D": [{"to": "sC", "p": 1.0}],
            "sC,a_E": [{"to": "sC", "p": 1.0}]},
        "initial": [1.0, 0.0, 0.0, 0.0]}})json";
    out.close();
    const std::string cmd = "OBJSPEC_FIXTURE_DIR=" + dir + " " + OBJSPEC_CLI_PATH +
                            " check --fixture ex_two_paths > " +
                            (std::filesystem::temp_directory_path() / "objspec_cli_out.txt")
                                .string() +
                            " 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 4); // the claims no longer replay
}

TEST_CASE("trajectory and prefix reports stream as json lines") {
    const RunResult lassos = run_cli(
        "eval --fixture ex_threshold --policy pi_049 --objective onmr_threshold --trajectories");
    CHECK(lassos.exit_code == 0);
    CHECK(lassos.out.find("\"probability\":0.49") != std::string::npos);
    CHECK(lassos.out.find("\"cycle\"") != std::string::npos);
    const RunResult prefixes = run_cli(
        "eval --fixture ex_threshold --policy pi_049 --objective onmr_threshold --prefixes 2");
    CHECK(prefixes.exit_code == 0);
    CHECK(prefixes.out.find("\"steps\"") != std::string::npos);
}

TEST_CASE("monte-carlo evaluation is seed-deterministic") {
    const std::string objective = write_temp("cli_inmr_mc.json", R"json({
        "type": "inmr", "gamma": 0.5, "wrapper": "identity",
        "reward": {"entries": [{"s": "s0", "a": "a_A", "s'": "s0", "r": 1.0}]}})json");
    const std::string args = "eval --fixture ex_loop --policy pi_alpha_0.500000 --objective " +
                             objective + " --mc-samples 2000 --mc-horizon 100 --seed 7 "
                             "--format json";
    const RunResult r1 = run_cli(args);
    const RunResult r2 = run_cli(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out.find("std_error") != std::string::npos);
    CHECK(r1.out.find("bias") != std::string::npos);
}

TEST_CASE("ordering formalisms compare two named fixture policies") {
    const RunResult greater =
        run_cli("eval --fixture ex_lex --policy pi_10,pi_01 --objective gomorl_lex");
    CHECK(greater.exit_code == 0);
    CHECK(greater.out.find("greater") != std::string::npos);
    const RunResult equal =
        run_cli("eval --fixture ex_unvisited --policy pi_1,pi_2 --objective gomorl_delta");
    CHECK(equal.exit_code == 0);
    CHECK(equal.out.find("equal") != std::string::npos);
    const RunResult bad =
        run_cli("eval --fixture ex_lex --policy pi_10,pi_01 --objective mr.json");
    CHECK(bad.exit_code == 2);
}
