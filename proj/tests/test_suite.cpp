#include "nilprog/suite.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace nilprog;

TEST(Config, RoundTripThroughText) {
    SuiteConfig cfg;
    cfg.suite = "hallpetresco";
    cfg.seed = 42;
    cfg.max_rank = 2;
    cfg.max_class = 3;
    cfg.hp_pairs = 17;
    cfg.dark_instances = 9;
    cfg.occ_samples = 5000;
    cfg.occ_grid = 25;
    cfg.alpha = "0.125";
    cfg.beta = "0.5";
    std::istringstream in(cfg.to_text());
    SuiteConfig back = SuiteConfig::parse(in);
    EXPECT_EQ(back.to_text(), cfg.to_text());
    EXPECT_EQ(back.suite, "hallpetresco");
    EXPECT_EQ(back.seed, 42u);
    EXPECT_EQ(back.hp_pairs, 17);
}

TEST(Config, CommentsAndBlanksIgnored) {
    std::istringstream in("# a comment\n\nsuite = algebra\n seed = 7 # trailing\n");
    auto cfg = SuiteConfig::parse(in);
    EXPECT_EQ(cfg.suite, "algebra");
    EXPECT_EQ(cfg.seed, 7u);
}

TEST(Config, InvalidInputsRejected) {
    {
        std::istringstream in("suite = nope\n");
        EXPECT_THROW(SuiteConfig::parse(in).validate(), ConfigInvalid);
    }
    {
        std::istringstream in("suite = algebra\nmax_class = 7\n");
        EXPECT_THROW(SuiteConfig::parse(in).validate(), ConfigInvalid);
    }
    {
        std::istringstream in("mystery = 1\n");
        EXPECT_THROW(SuiteConfig::parse(in), ConfigInvalid);
    }
    {
        std::istringstream in("seed = banana\n");
        EXPECT_THROW(SuiteConfig::parse(in), ConfigInvalid);
    }
    {
        std::istringstream in("alpha = 0.1.2\n");
        EXPECT_THROW(SuiteConfig::parse(in).validate(), ConfigInvalid);
    }
}

TEST(RunSuite, Example41AllPass) {
    SuiteConfig cfg;
    cfg.suite = "example41";
    auto rep = run_suite(cfg);
    EXPECT_TRUE(rep.all_pass());
    EXPECT_GT(rep.passed, 5);
    EXPECT_EQ(rep.failed, 0);
    EXPECT_EQ(rep.errored, 0);
}

TEST(RunSuite, DeterministicModuloTiming) {
    SuiteConfig cfg;
    cfg.suite = "hallpetresco";
    cfg.seed = 99;
    cfg.hp_pairs = 20;
    cfg.dark_instances = 10;
    auto a = run_suite(cfg).to_json();
    auto b = run_suite(cfg).to_json();
    EXPECT_NE(a, b);  // timing differs
    EXPECT_EQ(deterministic_view(a).dump(), deterministic_view(b).dump());
}

TEST(RunSuite, SeedChangesSampledWitnesses) {
    SuiteConfig cfg;
    cfg.suite = "occupancy";
    cfg.occ_samples = 1;
    cfg.occ_grid = 10;
    auto rep = run_suite(cfg);
    // single sample occupies exactly one cell of the 10 x 10 grid
    for (const auto& c : rep.checks)
        if (c.name == "occupancy-single-sample") {
            EXPECT_EQ(c.status, "pass");
            EXPECT_DOUBLE_EQ(c.witness.at("fraction").get<double>(), 0.01);
        }
}

TEST(RunSuite, SummaryCountsMatchStatuses) {
    SuiteConfig cfg;
    cfg.suite = "algebra";
    cfg.hp_pairs = 5;
    auto rep = run_suite(cfg);
    int pass = 0, fail = 0, err = 0;
    for (const auto& c : rep.checks) {
        pass += c.status == "pass";
        fail += c.status == "fail";
        err += c.status == "error";
    }
    EXPECT_EQ(rep.passed, pass);
    EXPECT_EQ(rep.failed, fail);
    EXPECT_EQ(rep.errored, err);
}

TEST(Explain, KnownAndUnknownChecks) {
    auto text = explain("dark-weight");
    EXPECT_NE(text.find("Oracle:"), std::string::npos);
    EXPECT_NE(text.find("G_l"), std::string::npos);
    EXPECT_NE(explain("intertwine-h").find("(4y-w)/2"), std::string::npos);
    EXPECT_THROW(explain("nope"), Error);
}

TEST(Explain, CoversEveryEmittedCheck) {
    SuiteConfig cfg;
    cfg.suite = "all";
    cfg.hp_pairs = 2;
    cfg.dark_instances = 2;
    cfg.occ_samples = 100;
    cfg.occ_grid = 10;
    auto rep = run_suite(cfg);
    for (const auto& c : rep.checks)
        EXPECT_NO_THROW(explain(c.name)) << "missing explain entry for " << c.name;
}

TEST(JsonIo, SpecRoundTrip) {
    for (auto spec : {hall_basis(2, 3), hall_basis(3, 2)}) {
        auto j = spec_to_json(*spec);
        auto back = spec_from_json(j);
        EXPECT_TRUE(back->compatible(*spec));
        EXPECT_EQ(spec_to_json(*back), j);
    }
    auto mat = NilGroupSpec::unitriangular(4);
    EXPECT_TRUE(spec_from_json(spec_to_json(*mat))->compatible(*mat));
}

TEST(JsonIo, SpecJsonTamperDetected) {
    auto spec = hall_basis(2, 2);
    auto j = spec_to_json(*spec);
    j["basis"][2]["label"] = "[x2,x1]";
    EXPECT_THROW(spec_from_json(j), Error);
    auto j2 = spec_to_json(*spec);
    j2["brackets"][0]["coeffs"][0][1] = "2";
    EXPECT_THROW(spec_from_json(j2), Error);
}

TEST(JsonIo, HpSequenceRoundTrip) {
    auto spec = NilGroupSpec::unitriangular(3);
    Rng rng(5);
    auto phi = random_hp_member(rng, spec);
    auto j = hp_to_json(phi);
    auto back = hp_from_json(j);
    EXPECT_EQ(back, phi);
}

TEST(JsonIo, ExpansionSerializesNonIdentityEntries) {
    auto spec = hall_basis(2, 3);
    Rng rng(7);
    auto g = random_element_min_weight(rng, spec, 2);
    auto expansion = dark_expand({{g, monomial_to_binomial(2)}});
    auto j = expansion_to_json(expansion);
    EXPECT_EQ(j.at("ordering"), "lex");
    EXPECT_EQ(j.at("arity"), 1);
    for (const auto& entry : j.at("entries"))
        EXPECT_FALSE(entry.at("coords").empty());
}
