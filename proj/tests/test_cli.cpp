#include <gtest/gtest.h>

#include "cli_app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ktheory;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(KTHEORY_FIXTURE_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("ktheory_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                             ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

const char* kGxG = R"({"product":[{"atom":"G"},{"atom":"G"}]})";

} // namespace

TEST(Cli, SpecR) {
    const CliRun r = run({"spec-r"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("(I,2) = (J,2)"), std::string::npos);
    EXPECT_NE(r.out.find("Z_(3), t -> -1"), std::string::npos);
    EXPECT_EQ(run({"spec-r", "--primes", "4"}).code, 2);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"kunneth", "--prime", "I,3", "--space", kGxG}).code, 0);
    EXPECT_EQ(run({"localize", "--prime", "I,3", "--module", fixture("broken_t_squared.json")}).code, 1);
    EXPECT_EQ(run({"six-term", "--data", fixture("broken_six_term.json")}).code, 1);
    EXPECT_EQ(run({"six-term", "--data", fixture("G.json")}).code, 0);
    for (const char* m : {"mutated_scaled_psi.json", "mutated_broken_t.json", "mutated_nonlinear_phi.json"})
        EXPECT_EQ(run({"localize", "--prime", "I,3", "--kinv", fixture(m)}).code, 1) << m;

    // input errors
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"kunneth", "--prime", "K,3", "--space", kGxG}).code, 2);
    EXPECT_EQ(run({"kunneth", "--prime", "I,2", "--space", kGxG}).code, 2);
    EXPECT_EQ(run({"kunneth", "--prime", "I,3", "--space", R"({"atom":"G"})"}).code, 2);
    EXPECT_EQ(run({"localize", "--prime", "I,3", "--module", "/nonexistent.json"}).code, 2);
    EXPECT_EQ(run({"tensor", "--a", R"({"p":3})", "--b", R"({"p":5})"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "p2"}).code, 2);
    EXPECT_EQ(run({"localize", "--prime", "I,3", "--mode", "fancy", "--module", fixture("broken_t_squared.json")}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SchemaErrorsNameTheLocation) {
    const CliRun r = run({"localize", "--prime", "I,3", "--module", R"({"gens":1,"rels":[],"t":[[1,0]]})"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("<inline>#/t/0"), std::string::npos) << r.err;
}

TEST(Cli, KunnethOutput) {
    const CliRun r = run({"kunneth", "--prime", "I,3", "--space", kGxG});
    EXPECT_NE(r.out.find("middle {even: Z_(3)^4, odd: 0}"), std::string::npos) << r.out;
    const CliRun x = run({"kunneth", "--prime", "I,3", "--x", fixture("G.json"), "--y", fixture("G.json")});
    EXPECT_EQ(x.code, 0);
    EXPECT_NE(x.out.find("middle {even: Z_(3)^4, odd: 0}"), std::string::npos);
    const CliRun p2 = run({"kunneth", "--prime", "I,2", "--experimental-p2", "--space", R"({"product":[{"atom":"pt"},{"atom":"pt"}]})"});
    EXPECT_EQ(p2.code, 0);
    EXPECT_NE(p2.out.find("XFAIL p2.self_consistency"), std::string::npos);
}

TEST(Cli, VerboseLocalizeShowsDiscardedTorsion) {
    const CliRun r = run({"localize", "--prime", "I,3", "--verbose", "--module", R"({"gens":1,"rels":[[10]],"t":[[1]]})"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("discarded torsion prime to 3: Z/10"), std::string::npos) << r.out;
}

TEST(Cli, GenuineModeAtTwoReportsNonDvrModules) {
    const CliRun r = run({"localize", "--prime", "I,2", "--mode", "genuine", "--experimental-p2", "--module", R"({"gens":2,"rels":[],"t":[[0,1],[1,0]]})"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("not a DVR module"), std::string::npos);
}

TEST(Cli, JsonReportsAreDeterministic) {
    TempDir dir;
    const fs::path a = dir.path() / "a.json", b = dir.path() / "b.json";
    const std::vector<std::string> base{"verify", "--suite", "all", "--experimental-p2", "--primes", "I,3", "J,3", "I,2"};
    auto with = [&](const fs::path& p) {
        auto v = base;
        v.push_back("--json");
        v.push_back(p.string());
        return v;
    };
    EXPECT_EQ(run(with(a)).code, 0);
    EXPECT_EQ(run(with(b)).code, 0);
    const std::string ta = slurp(a);
    EXPECT_EQ(ta, slurp(b));

    const io::json j = io::parse(ta);
    EXPECT_EQ(j["exit_code"], 0);
    EXPECT_FALSE(j.contains("timing"));
    EXPECT_TRUE(j["failed_checks"].empty());
    EXPECT_EQ(j["inputs_digest"].get<std::string>().rfind("fnv1a64:", 0), 0U);
    bool saw_xfail = false;
    for (const auto& c : j["checks"])
        if (c["id"] == "p2.self_consistency") saw_xfail = c.value("expected_failure", false) && !c["pass"].get<bool>();
    EXPECT_TRUE(saw_xfail);

    // a different input changes the digest
    auto other = with(b);
    other[6] = "I,5";
    run(other);
    EXPECT_NE(io::parse(slurp(b))["inputs_digest"], j["inputs_digest"]);
}

TEST(Cli, InputErrorsStillWriteAReport) {
    TempDir dir;
    const fs::path a = dir.path() / "err.json";
    EXPECT_EQ(run({"localize", "--prime", "I,3", "--module", R"({"gens":"x"})", "--json", a.string()}).code, 2);
    const io::json j = io::parse(slurp(a));
    EXPECT_EQ(j["exit_code"], 2);
    EXPECT_EQ(j["error"]["pointer"], "<inline>#/gens");
}

TEST(Cli, VerifyUsesTheSuiteDirectory) {
    TempDir dir;
    for (const char* n : {"pt.json", "V.json", "G.json", "GxR.json"}) fs::copy_file(fixture(n), dir.path() / n);
    ::setenv("KTHEORY_SUITE_DIR", dir.path().c_str(), 1);
    EXPECT_EQ(run({"verify", "--primes", "I,3"}).code, 0);

    fs::copy_file(fixture("broken_six_term.json"), dir.path() / "pt.json", fs::copy_options::overwrite_existing);
    const CliRun bad = run({"verify", "--primes", "I,3"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("six_term.pt.exact_at.K0_G"), std::string::npos);

    fs::remove(dir.path() / "V.json");
    EXPECT_EQ(run({"verify", "--primes", "I,3"}).code, 2);
    ::unsetenv("KTHEORY_SUITE_DIR");
}

TEST(Cli, OtherCommands) {
    EXPECT_EQ(run({"doubling", "--prime", "I,5", "--atom", "V"}).code, 0);
    EXPECT_EQ(run({"doubling", "--prime", "I,5", "--kinv", fixture("GxR.json")}).code, 0);
    const CliRun rf = run({"remark-failure", "--prime", "I,3"});
    EXPECT_EQ(rf.code, 0);
    EXPECT_NE(rf.out.find("(mismatch)"), std::string::npos);
    const CliRun tor = run({"tor", "--a", R"({"p":3,"torsion":[2]})", "--b", R"({"p":3,"torsion":[1]})"});
    EXPECT_EQ(tor.code, 0);
    EXPECT_NE(tor.out.find("= Z/3\n"), std::string::npos) << tor.out;
    EXPECT_EQ(run({"six-term", "--atom", "pt"}).code, 0);
    EXPECT_EQ(run({"six-term", "--atom", "torus"}).code, 2);
}
