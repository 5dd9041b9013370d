#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cli_support.hpp"
#include "csv_reader.hpp"
#include "oracles.hpp"
#include "shiftconv/experiments.hpp"
#include "shiftconv/generate.hpp"
#include "shiftconv/io.hpp"
#include "shiftconv/methods.hpp"

namespace sc = shiftconv;
using clitest::run;

// ---- parse_probabilities ----

TEST(ParseProbabilities, ReadsOnePerLine) {
  const auto pv = sc::parse_probabilities(clitest::write_temp("0.5\n0.5\n"));
  EXPECT_EQ(pv.probs, (std::vector<double>{0.5, 0.5}));
}

TEST(ParseProbabilities, SkipsCommentsAndBlankLines) {
  const auto pv = sc::parse_probabilities(clitest::write_temp("# header\n1\n\n  0  # trailing\n"));
  EXPECT_EQ(pv.probs, (std::vector<double>{1.0, 0.0}));
}

TEST(ParseProbabilities, OutOfRangeNamesLine) {
  try {
    sc::parse_probabilities(clitest::write_temp("1.2"));
    FAIL() << "expected InputError";
  } catch (const sc::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos) << e.what();
  }
}

TEST(ParseProbabilities, GarbageNamesLine) {
  try {
    sc::parse_probabilities(clitest::write_temp("0.1\n# c\n0.2x\n"));
    FAIL() << "expected InputError";
  } catch (const sc::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(ParseProbabilities, MissingFile) {
  EXPECT_THROW(sc::parse_probabilities("/nonexistent/dir/probs.txt"), sc::InputError);
}

TEST(ParseProbabilities, RoundTripsSeventeenDigits) {
  const auto pv = sc::generate_probabilities(sc::parse_generator_spec("uniform:50:9"));
  const auto back = sc::parse_probabilities(clitest::write_temp(clitest::probs_text(pv.probs)));
  EXPECT_EQ(back.probs, pv.probs);
}

// ---- generators ----

TEST(Generator, SpecParsing) {
  const auto a = sc::parse_generator_spec("uniform:100:seed42");
  const auto b = sc::parse_generator_spec("uniform:100:42");
  EXPECT_EQ(a.n, 100u);
  EXPECT_EQ(a.seed, 42u);
  EXPECT_EQ(sc::generate_probabilities(a).probs, sc::generate_probabilities(b).probs);

  const auto beta = sc::parse_generator_spec("beta:10:1:0.1:3");
  EXPECT_EQ(beta.family, sc::Family::kBeta);
  EXPECT_DOUBLE_EQ(beta.beta.a, 0.1);
  EXPECT_DOUBLE_EQ(beta.beta.b, 3.0);

  const auto mix = sc::parse_generator_spec("mixture:10:1:0.5:3:0.1:0.5:0.1:3");
  EXPECT_EQ(mix.family, sc::Family::kMixture);
  EXPECT_DOUBLE_EQ(mix.mixture[1].shape.a, 0.1);
}

TEST(Generator, SpecErrors) {
  for (const char* bad : {"uniform", "uniform:10", "uniform:x:1", "uniform:10:seedx",
                          "normal:10:1", "beta:10:1:0:1", "beta:10:1:1", "beta:10:1:-1:2",
                          "mixture:10:1:0.5:1:1:0.6:1:1", "uniform:10:1:5"}) {
    EXPECT_THROW(sc::parse_generator_spec(bad), sc::InputError) << bad;
  }
}

TEST(Generator, UniformIsDeterministic) {
  const auto spec = sc::parse_generator_spec("uniform:5:seed7");
  const auto a = sc::generate_probabilities(spec);
  const auto b = sc::generate_probabilities(spec);
  EXPECT_EQ(a.probs, b.probs);
  EXPECT_EQ(a.size(), 5u);
  for (double p : a.probs) {
    EXPECT_GE(p, 0.0);
    EXPECT_LT(p, 1.0);
  }
  EXPECT_NE(a.probs, sc::generate_probabilities(sc::parse_generator_spec("uniform:5:8")).probs);
}

TEST(Generator, UniformMatchesTopBitsOfEngine) {
  std::mt19937_64 engine(123);
  sc::Sampler sampler(123);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(sampler.uniform(), static_cast<double>(engine() >> 11) * 0x1p-53);
}

TEST(Generator, GammaMoments) {
  // Gamma(a, 1) has mean a and variance a.
  for (double shape : {0.1, 0.5, 1.0, 3.0, 12.5}) {
    sc::Sampler sampler(1000 + static_cast<std::uint64_t>(shape * 10));
    const int draws = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double x = sampler.gamma(shape);
      ASSERT_GE(x, 0.0);
      sum += x;
      sum_sq += x * x;
    }
    const double mean = sum / draws;
    const double var = sum_sq / draws - mean * mean;
    // 5 standard errors of the sample mean; variance within 5%.
    EXPECT_NEAR(mean, shape, 5.0 * std::sqrt(shape / draws)) << shape;
    EXPECT_NEAR(var / shape, 1.0, 0.05 + 0.2 * (shape < 0.5)) << shape;
  }
}

TEST(Generator, BetaOneOneIsUniformInMean) {
  const auto pv = sc::generate_probabilities(sc::parse_generator_spec("beta:10000:11:1:1"));
  double mean = 0.0;
  for (double p : pv.probs) mean += p;
  mean /= static_cast<double>(pv.size());
  EXPECT_NEAR(mean, 0.5, 0.02);
}

TEST(Generator, BetaMeanMatchesShape) {
  const auto pv = sc::generate_probabilities(sc::parse_generator_spec("beta:20000:5:0.1:3"));
  double mean = 0.0;
  for (double p : pv.probs) mean += p;
  mean /= static_cast<double>(pv.size());
  // E = a / (a + b); sd of one draw is about 0.1.
  EXPECT_NEAR(mean, 0.1 / 3.1, 5.0 * 0.1 / std::sqrt(20000.0));
}

TEST(Generator, BetaThreeTenthRoundsToOne) {
  // 1 - p ~ Beta(0.1, 3). A draw rounds to 1.0 once 1 - p falls below half
  // an ulp of 1 (2^-54) and certainly once Y/X is below 2^-53. scipy gives
  // the Beta(0.1, 3) cdf as 0.027354 at 2^-54 and 0.029317 at 2^-53.
  const auto pv = sc::generate_probabilities(sc::parse_generator_spec("beta:10000:42:3:0.1"));
  const auto ones = std::count(pv.probs.begin(), pv.probs.end(), 1.0);
  const double fraction = static_cast<double>(ones) / 10000.0;
  const double sd = std::sqrt(0.028 * 0.972 / 10000.0);
  EXPECT_GE(fraction, 0.027354 - 4 * sd);
  EXPECT_LE(fraction, 0.029317 + 4 * sd);
  const auto pre = sc::preprocess(pv);
  EXPECT_EQ(pre.ones_count, static_cast<std::size_t>(ones));
}

TEST(Generator, MixtureUsesBothComponents) {
  const auto pv =
      sc::generate_probabilities(sc::parse_generator_spec("mixture:10000:3:0.5:3:0.1:0.5:0.1:3"));
  const auto high = std::count_if(pv.probs.begin(), pv.probs.end(), [](double p) { return p > 0.5; });
  // Each component puts almost all of its mass on its own side of 1/2.
  EXPECT_NEAR(static_cast<double>(high) / 10000.0, 0.5, 0.03);
}

// ---- method names ----

TEST(Methods, ClosedSetRoundTrips) {
  for (const char* name : {"dc", "dc-log", "pa-fft", "fpa-fft", "dc-fft:4", "dc-fft:heuristic",
                           "dft-cf", "shiftconvolve", "fpa-fft-noshift"}) {
    EXPECT_EQ(sc::parse_method(name).name(), name);
  }
  for (const char* bad : {"", "DC", "fft", "dc-fft", "dc-fft:", "dc-fft:0", "dc-fft:x", "shift"}) {
    EXPECT_THROW(sc::parse_method(bad), sc::InputError) << bad;
  }
  EXPECT_EQ(sc::parse_method_list("dc,fpa-fft").size(), 2u);
  EXPECT_THROW(sc::parse_method_list("dc,,fpa-fft"), sc::InputError);
}

TEST(Methods, RelativeErrorFromLogs) {
  EXPECT_EQ(sc::relative_error_from_logs(-3.0, -3.0), 0.0);
  EXPECT_EQ(sc::relative_error_from_logs(sc::kNegInf, sc::kNegInf), 0.0);
  EXPECT_EQ(sc::relative_error_from_logs(sc::kNegInf, -800.0), 1.0);
  EXPECT_TRUE(std::isinf(sc::relative_error_from_logs(-800.0, sc::kNegInf)));
  EXPECT_NEAR(sc::relative_error_from_logs(std::log(1.5), 0.0), 0.5, 1e-15);
}

// ---- tail ----

TEST(CmdTail, TwoHalvesAtTwo) {
  const auto r = run({"tail", "--probs", clitest::write_temp("0.5\n0.5\n"), "--s0", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(clitest::field(r.out, "log10_p")), std::log10(0.25), 1e-14);
  EXPECT_NEAR(std::stod(clitest::field(r.out, "log_p")), std::log(0.25), 1e-14);
  EXPECT_EQ(std::stod(clitest::field(r.out, "p")), 0.25);
}

TEST(CmdTail, TwoHalvesAtZeroIsExactlyOne) {
  const auto r = run({"tail", "--probs", clitest::write_temp("0.5\n0.5\n"), "--s0", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(clitest::field(r.out, "p"), "1");
  EXPECT_EQ(clitest::field(r.out, "log_p"), "0");
}

TEST(CmdTail, GeneratedMatchesLogSpaceDc) {
  const auto shift = run({"tail", "--gen", "uniform:100:seed42", "--s0", "95"});
  const auto gold = run({"tail", "--gen", "uniform:100:seed42", "--s0", "95", "--method", "dc-log"});
  ASSERT_EQ(shift.code, 0) << shift.err;
  ASSERT_EQ(gold.code, 0) << gold.err;
  const double a = std::stod(clitest::field(shift.out, "log_p"));
  const double b = std::stod(clitest::field(gold.out, "log_p"));
  EXPECT_LE(std::abs(std::expm1(a - b)), 1e-9);
}

TEST(CmdTail, UnderflowReported) {
  // 0.01^200 = 1e-400 is below the smallest double.
  std::string text;
  for (int i = 0; i < 200; ++i) text += "0.01\n";
  const auto r = run({"tail", "--probs", clitest::write_temp(text), "--s0", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(clitest::field(r.out, "p"), "underflow");
  EXPECT_NEAR(std::stod(clitest::field(r.out, "log10_p")), -400.0, 1e-10);
}

TEST(CmdTail, JsonFields) {
  const auto r = run({"tail", "--gen", "uniform:30:1", "--s0", "25", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  for (const char* key : {"method", "s0", "log_p", "log10_p", "linear_p", "diagnostics"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc["method"], "shiftconvolve");
  EXPECT_EQ(doc["s0"], 25);
  EXPECT_TRUE(doc["diagnostics"].contains("theta"));
  EXPECT_GT(doc["diagnostics"]["theta"].get<double>(), 0.0);
  EXPECT_NEAR(doc["linear_p"].get<double>(), std::exp(doc["log_p"].get<double>()), 1e-300);
}

TEST(CmdTail, JsonNullsForImpossibleTail) {
  const auto r = run({"tail", "--probs", clitest::write_temp("0.5\n"), "--s0", "2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["log_p"].is_null());
  EXPECT_EQ(doc["linear_p"].get<double>(), 0.0);
}

TEST(CmdTail, LeftMatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 1 + seed % 12;
    auto probs = oracle::uniform_probs(n, 500 + seed);
    if (seed % 4 == 0) probs[0] = 1.0;
    if (seed % 5 == 0) probs[n - 1] = 0.0;
    const auto pmf = oracle::enumerate_pmf(probs);
    const auto path = clitest::write_temp(clitest::probs_text(probs));
    for (std::size_t s0 = 0; s0 <= n; ++s0) {
      const auto r = run({"tail", "--probs", path, "--s0", std::to_string(s0), "--left"});
      ASSERT_EQ(r.code, 0) << r.err;
      long double truth = 0.0L;
      for (std::size_t k = 0; k <= s0; ++k) truth += pmf[k];
      const double got = std::exp(std::stod(clitest::field(r.out, "log_p")));
      if (truth == 0.0L) {
        EXPECT_EQ(got, 0.0);
      } else {
        EXPECT_LE(oracle::relative_error(got, truth), 1e-12) << "seed " << seed << " s0 " << s0;
      }
    }
  }
}

TEST(CmdTail, OutFile) {
  const auto path = clitest::write_temp("", "out");
  const auto r = run({"tail", "--gen", "uniform:10:1", "--s0", "5", "--json", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc["s0"], 5);
}

// ---- exit codes ----

TEST(ExitCodes, UsageErrors) {
  const auto probs = clitest::write_temp("0.5\n0.5\n");
  const std::vector<std::vector<std::string>> cases = {
      {},
      {"frobnicate"},
      {"tail", "--probs", probs},
      {"tail", "--s0", "1"},
      {"tail", "--probs", probs, "--gen", "uniform:2:1", "--s0", "1"},
      {"tail", "--probs", probs, "--s0", "1", "--method", "nope"},
      {"tail", "--probs", probs, "--s0", "4"},
      {"tail", "--probs", probs, "--s0", "-1"},
      {"tail", "--probs", probs, "--s0", "3", "--left"},
      {"tail", "--probs", "/nonexistent", "--s0", "1"},
      {"tail", "--probs", clitest::write_temp("0.5\n2\n"), "--s0", "1"},
      {"tail", "--gen", "beta:5:1:0:1", "--s0", "1"},
      {"pmf", "--probs", probs, "--s0", "1", "--method", "dc"},
      {"compare", "--probs", probs},
      {"compare", "--probs", probs, "--methods", "dc", "--s0-range", "3:1"},
      {"compare", "--probs", probs, "--methods", "dc", "--s0-range", "0:9"},
      {"bench", "--sizes", "8", "--methods", "dc", "--reps", "0"},
      {"bench", "--sizes", "3^4", "--methods", "dc"},
      {"bench", "--methods", "dc"},
  };
  for (const auto& args : cases) {
    const auto r = run(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.code, sc::kExitUsage) << joined;
    // One-line diagnostic.
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << joined << ": " << r.err;
  }
}

TEST(ExitCodes, NumericFailure) {
  // Reaching s0 = 2 needs theta near 460, which rounds the tilted 0.9 to 1.
  const auto r = run({"tail", "--probs", clitest::write_temp("1e-200\n1e-200\n0.9\n"), "--s0", "2"});
  EXPECT_EQ(r.code, sc::kExitNumeric);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
}

TEST(ExitCodes, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("tail"), std::string::npos);
}

// ---- pmf ----

TEST(CmdPmf, SingleHalf) {
  const auto r = run({"pmf", "--probs", clitest::write_temp("0.5\n")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = csv::parse(r.out);
  EXPECT_EQ(t.header, (std::vector<std::string>{"k", "log_value", "raw_value"}));
  ASSERT_EQ(t.rows.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(t.number(k, "k"), static_cast<double>(k));
    EXPECT_NEAR(t.number(k, "log_value"), std::log(0.5), 1e-15);
  }
}

TEST(CmdPmf, DcAgreesWithFrugalFft) {
  const auto dc = csv::parse(run({"pmf", "--gen", "uniform:64:seed5", "--method", "dc"}).out);
  const auto fpa = csv::parse(run({"pmf", "--gen", "uniform:64:seed5", "--method", "fpa-fft"}).out);
  ASSERT_EQ(dc.rows.size(), 65u);
  ASSERT_EQ(fpa.rows.size(), 65u);
  for (std::size_t k = 0; k < 65; ++k) {
    EXPECT_NEAR(dc.number(k, "raw_value"), fpa.number(k, "raw_value"), 1e-11) << k;
  }
}

TEST(CmdPmf, DftCfEmitsNonPositiveRawValues) {
  const auto r = run({"pmf", "--gen", "uniform:100:seed1", "--method", "dft-cf"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = csv::parse(r.out);
  ASSERT_EQ(t.rows.size(), 101u);
  std::size_t non_positive = 0;
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    const double raw = t.number(k, "raw_value");
    if (raw <= 0.0) {
      ++non_positive;
      EXPECT_EQ(t.number(k, "log_value"), -INFINITY);
    }
  }
  EXPECT_GT(non_positive, 0u);
}

TEST(CmdPmf, TiltedPmfIsAccurateNearS0) {
  const auto pv = sc::generate_probabilities(sc::parse_generator_spec("uniform:60:4"));
  const auto gold = sc::direct_convolution_logspace(sc::preprocess(pv));
  const auto r = run({"pmf", "--gen", "uniform:60:4", "--s0", "57"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = csv::parse(r.out);
  for (std::size_t k = 54; k <= 60; ++k) {
    EXPECT_LE(std::abs(std::expm1(t.number(k, "log_value") - gold.log_values[k])), 1e-10) << k;
  }
}

TEST(CmdPmf, DegenerateSupport) {
  const auto r = run({"pmf", "--probs", clitest::write_temp("1\n0\n0.25\n1\n"), "--method", "dc"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = csv::parse(r.out);
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(t.number(0, "raw_value"), 0.0);
  EXPECT_EQ(t.number(1, "raw_value"), 0.0);
  EXPECT_EQ(t.number(2, "raw_value"), 0.75);
  EXPECT_EQ(t.number(3, "raw_value"), 0.25);
  EXPECT_EQ(t.number(4, "log_value"), -INFINITY);
}

TEST(CmdPmf, CsvRoundTripsExactly) {
  const auto pv = sc::generate_probabilities(sc::parse_generator_spec("uniform:40:8"));
  const auto pmf = sc::method_pmf(sc::parse_method("dc"), pv, std::nullopt);
  const auto t = csv::parse(run({"pmf", "--gen", "uniform:40:8", "--method", "dc"}).out);
  ASSERT_EQ(t.rows.size(), pmf.raw.size());
  for (std::size_t k = 0; k < pmf.raw.size(); ++k) {
    EXPECT_EQ(t.number(k, "raw_value"), pmf.raw[k]);
    EXPECT_EQ(t.number(k, "log_value"), pmf.log_pmf.log_values[k]);
  }
}

// ---- compare ----

TEST(CmdCompare, ShiftConvolveTenDigitsAtSixteen) {
  const auto r = run({"compare", "--gen", "uniform:16:seed3", "--methods", "shiftconvolve",
                      "--s0-range", "0:16"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = csv::parse(r.out);
  ASSERT_EQ(t.rows.size(), 17u);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_LE(t.number(i, "shiftconvolve_log10_relerr"), -10.0) << "s0 " << i;
  }
}

TEST(CmdCompare, GoldAgainstItselfIsZero) {
  const auto r = run({"compare", "--gen", "uniform:50:2", "--methods", "dc-log,dc"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = csv::parse(r.out);
  ASSERT_EQ(t.rows.size(), 51u);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(t.number(i, "dc-log_relerr"), 0.0);
    EXPECT_EQ(t.number(i, "dc-log_log10_relerr"), -INFINITY);
    EXPECT_EQ(t.number(i, "dc-log_log10_tail"), t.number(i, "gold_log10_tail"));
  }
}

TEST(CmdCompare, UnshiftedMethodsLoseTinyTails) {
  const auto r = run({"compare", "--gen", "uniform:100:seed3", "--methods", "dft-cf,fpa-fft-noshift"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = csv::parse(r.out);
  std::size_t tiny_rows = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.number(i, "gold_log10_tail") >= -16.0) continue;
    ++tiny_rows;
    for (const char* m : {"dft-cf", "fpa-fft-noshift"}) {
      const std::string name(m);
      const bool reported_zero = t.number(i, name + "_log10_tail") == -INFINITY;
      EXPECT_TRUE(reported_zero || t.number(i, name + "_relerr") > 0.9)
          << name << " s0 " << t.rows[i][0];
    }
  }
  EXPECT_GT(tiny_rows, 5u);
}

TEST(CmdCompare, DeterministicAndRoundTrips) {
  const std::vector<std::string> args = {"compare", "--gen", "beta:40:6:0.1:3", "--methods",
                                         "shiftconvolve,fpa-fft,dc-fft:heuristic,dft-cf"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);

  const auto pv = sc::generate_probabilities(sc::parse_generator_spec("beta:40:6:0.1:3"));
  const auto methods = sc::parse_method_list("shiftconvolve,fpa-fft,dc-fft:heuristic,dft-cf");
  const auto rows = sc::compare_methods(pv, methods, 0, 40);
  const auto t = csv::parse(a.out);
  ASSERT_EQ(t.rows.size(), rows.size());
  ASSERT_EQ(t.header.size(), 2 + 3 * methods.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(t.number(i, "s0"), static_cast<double>(rows[i].s0));
    EXPECT_EQ(t.number(i, "gold_log10_tail"), rows[i].gold_log10_tail);
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const auto name = methods[m].name();
      EXPECT_EQ(t.number(i, name + "_log10_tail"), rows[i].methods[m].log10_tail);
      EXPECT_EQ(t.number(i, name + "_relerr"), rows[i].methods[m].relerr);
    }
  }
}

// ---- bench ----

TEST(CmdBench, SchemaStableAcrossRepetitions) {
  const auto one = run({"bench", "--sizes", "16,2^5", "--methods", "dc,shiftconvolve", "--reps", "1"});
  const auto ten = run({"bench", "--sizes", "16,2^5", "--methods", "dc,shiftconvolve", "--reps", "10"});
  ASSERT_EQ(one.code, 0) << one.err;
  ASSERT_EQ(ten.code, 0) << ten.err;
  const auto a = csv::parse(one.out);
  const auto b = csv::parse(ten.out);
  EXPECT_EQ(a.header, (std::vector<std::string>{"N", "method", "mean_seconds", "repetitions"}));
  EXPECT_EQ(a.header, b.header);
  ASSERT_EQ(a.rows.size(), 4u);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i][0], b.rows[i][0]);
    EXPECT_EQ(a.rows[i][1], b.rows[i][1]);
    EXPECT_GT(a.number(i, "mean_seconds"), 0.0);
    EXPECT_GT(b.number(i, "mean_seconds"), 0.0);
    EXPECT_EQ(a.rows[i][3], "1");
    EXPECT_EQ(b.rows[i][3], "10");
  }
  EXPECT_NE(one.err.find("slope dc:"), std::string::npos);
}

TEST(CmdBench, SizeRanges) {
  const auto r = run({"bench", "--sizes", "2^3..2^5", "--methods", "fpa-fft", "--reps", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = csv::parse(r.out);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[0][0], "8");
  EXPECT_EQ(t.rows[2][0], "32");
}

TEST(Bench, SlopeFit) {
  std::vector<sc::BenchRow> rows;
  for (std::size_t n : {100u, 200u, 400u, 800u}) {
    rows.push_back({n, "sq", 1e-9 * static_cast<double>(n * n), 1});
    rows.push_back({n, "lin", 3e-7 * static_cast<double>(n), 1});
  }
  EXPECT_NEAR(sc::fit_loglog_slope(rows, "sq"), 2.0, 1e-12);
  EXPECT_NEAR(sc::fit_loglog_slope(rows, "lin"), 1.0, 1e-12);
  EXPECT_TRUE(std::isnan(sc::fit_loglog_slope(rows, "missing")));
}

TEST(Bench, InputsAreFreshPerRepetition) {
  const auto a = sc::bench_input(100, 1, 0);
  EXPECT_EQ(a.probs, sc::bench_input(100, 1, 0).probs);
  EXPECT_NE(a.probs, sc::bench_input(100, 1, 1).probs);
  EXPECT_EQ(sc::bench_threshold(100), 90);
  EXPECT_EQ(sc::bench_threshold(4096), 3687);
}
