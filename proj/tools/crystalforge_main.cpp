#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "crystalforge/suites.hpp"
#include "crystalforge/tropic.hpp"
#include "crystalforge/unicrys.hpp"
#include "json.hpp"

using namespace cf;
using nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kViolation = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + out + "'");
  f << text;
}

std::string readFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

uint64_t defaultSeed() {
  const char* env = std::getenv("CRYSTALFORGE_SEED");
  if (!env || !*env) return kDefaultSeed;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end || v == 0) throw UsageError("CRYSTALFORGE_SEED must be a positive integer");
  return v;
}

std::vector<int> parseLabels(const std::string& s) {
  try {
    return parseWord(s);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string group = "GL3";
  std::vector<std::string> suites;
  std::string mode = "exact";
  uint64_t seed = 0;
  bool seedGiven = false;
  long long budget = static_cast<long long>(kDefaultTermBudget);
  int box = 4;
  std::string out;
  bool corrupt = false;
  bool timing = false;
};

int runVerify(const VerifyArgs& a) {
  SuiteOptions opt;
  opt.verify.mode = a.mode == "sampled" ? Mode::Sampled : Mode::Exact;
  opt.verify.seed = a.seedGiven ? a.seed : defaultSeed();
  if (opt.verify.seed == 0) throw UsageError("--seed must be positive");
  if (a.budget <= 0) throw UsageError("--budget must be positive");
  opt.verify.budget = size_t(a.budget);
  if (a.box < 0) throw UsageError("--box must be non-negative");
  opt.box = a.box;
  opt.corrupt = a.corrupt;

  std::vector<std::string> suites = a.suites;
  if (suites.empty())
    for (const auto& s : suiteNames())
      if (suiteApplies(s, a.group) && (!a.corrupt || suiteSupportsCorrupt(s))) suites.push_back(s);
  for (const auto& s : suites) {
    const auto& known = suiteNames();
    if (std::find(known.begin(), known.end(), s) == known.end()) throw UsageError("unknown suite '" + s + "'");
    if (!suiteApplies(s, a.group)) throw UsageError("suite '" + s + "' is not available for " + a.group);
    if (a.corrupt && !suiteSupportsCorrupt(s)) throw UsageError("--corrupt is not available for suite '" + s + "'");
  }
  std::vector<SuiteReport> reports;
  bool pass = true;
  for (const auto& s : suites) {
    reports.push_back(runSuite(s, a.group, opt));
    pass = pass && reports.back().pass();
    std::cerr << s << ": " << (reports.back().pass() ? "pass" : "FAIL") << "\n";
  }
  emit(reportJson(a.group, opt, reports, a.timing), a.out);
  return pass ? kPass : kViolation;
}

// ------------------------------------------------------------------ trop

struct TropArgs {
  std::string cell;
  std::string group = "SL2";
  int index = 0;
  bool crystal = false;
  std::string input;
  std::string out;
};

PLMap eMapOf(const CombCrystal& C, int i) {
  if (!C.e.count(i)) throw UsageError("e_" + std::to_string(i) + " is not defined on this crystal");
  VarNames v = C.vars;
  v.push_back("n");
  return PLMap{v, C.e.at(i)};
}

std::string tropOfCell(const std::string& group, const Word& w, int index, bool crystal) {
  auto ctx = GroupCtx::byName(group);
  CombCrystal C = tropCrystal(induced(standardCell(ctx, w)));
  if (crystal) return toJson(C) + "\n";
  int i = index ? index : C.support.front();
  return toJson(eMapOf(C, i)) + "\n";
}

// Input file: {"group": G, "cell": [..], "e": i} or {"vars": [..], "functions": ["expr", ..]}.
std::string tropOfInput(const std::string& text, bool crystal) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
  try {
    if (j.contains("cell")) {
      Word w = j.at("cell").get<Word>();
      return tropOfCell(j.value("group", std::string("SL2")), w, j.value("e", 0), crystal);
    }
    if (j.contains("functions")) {
      VarNames v = j.at("vars").get<VarNames>();
      PLMap f{v, {}};
      for (const auto& s : j.at("functions")) {
        RatFunc r;
        try {
          r = parseRatFunc(s.get<std::string>(), v);
        } catch (const ParseError& e) {
          throw UsageError(e.what());
        }
        f.components.push_back(tropicalize(r));
      }
      return toJson(f) + "\n";
    }
  } catch (const ordered_json::exception& e) {
    throw UsageError(std::string("bad chart description: ") + e.what());
  }
  throw UsageError("input needs either \"cell\" or \"functions\"");
}

int runTrop(const TropArgs& a) {
  if (a.cell.empty() == a.input.empty()) throw UsageError("give exactly one of --cell or --input");
  std::string text = a.input.empty() ? tropOfCell(a.group, parseLabels(a.cell), a.index, a.crystal)
                                     : tropOfInput(readFile(a.input), a.crystal);
  emit(text, a.out);
  return kPass;
}

// ------------------------------------------------------------------ graph

struct GraphArgs {
  int elementary = 0;
  std::string cell;
  std::string group = "SL2";
  int box = 2;
  std::string out;
};

int runGraph(const GraphArgs& a) {
  if ((a.elementary != 0) == !a.cell.empty()) throw UsageError("give exactly one of --elementary or --cell");
  CombCrystal C;
  if (a.elementary) {
    auto d = RootDatum::byName(a.group);
    if (!d->hasLabel(a.elementary)) throw UsageError("no simple root " + std::to_string(a.elementary));
    C = elementaryComb(d, a.elementary);
  } else {
    C = tropCrystal(induced(standardCell(GroupCtx::byName(a.group), parseLabels(a.cell))));
  }
  emit(crystalGraphDOT(C, a.box), a.out);
  return kPass;
}

// ------------------------------------------------------------------ weyl

struct WeylArgs {
  std::string group = "GL3";
  bool special = false;
  std::string J;
  std::string w;
  std::string star;
  std::string project;
  std::string lattice;
  std::string out;
};

int runWeyl(const WeylArgs& a) {
  auto d = RootDatum::byName(a.group);
  auto checkWord = [&](const std::string& s) {
    Word w = parseLabels(s);
    for (int i : w)
      if (!d->hasLabel(i)) throw UsageError("no simple root " + std::to_string(i) + " in " + a.group);
    return w;
  };
  std::vector<int> J;
  if (!a.J.empty()) J = checkWord(a.J);
  ordered_json j;
  j["group"] = a.group;
  if (!a.star.empty()) j["star"] = demazureOfWord(d, checkWord(a.star)).str();
  if (!a.project.empty()) {
    WeylElt w = WeylElt::fromWord(d, checkWord(a.project));
    j["projectJ"] = {{"w", w.str()}, {"J", J}, {"result", projectJ(w, J).str()}};
  }
  if (!a.lattice.empty()) {
    WeylElt w = WeylElt::fromWord(d, checkWord(a.lattice));
    j["latticeTw"] = {{"w", w.str()}, {"rank", latticeTw(w).rank()}};
  }
  if (a.special) {
    if (a.J.empty()) throw UsageError("--special needs --J");
    WeylElt w = a.w.empty() ? wLevi(d, J, d->labels) : WeylElt::fromWord(d, checkWord(a.w));
    SpecialReport r = isSpecial(w, J);
    j["w"] = w.str();
    j["special"] = r.special;
    j["l"] = r.l;
    j["lProj"] = r.lProj;
    j["rankTsigma"] = r.rank;
  }
  if (j.size() == 1) throw UsageError("nothing to report: pass --star, --project, --lattice or --special");
  emit(j.dump(2) + "\n", a.out);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crystalforge: exact verification of geometric and unipotent crystal identities"};
  app.require_subcommand(1);
  const std::vector<std::string> groups = groupNames();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run verification suites and print a JSON report");
  verify->add_option("--group", va.group, "group")->check(CLI::IsMember(groups));
  verify->add_option("--suite", va.suites, "suite name(s); default all that apply")->delimiter(',');
  verify->add_option("--mode", va.mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
  auto* seedOpt = verify->add_option("--seed", va.seed, "sampling seed (default 20231210 or $CRYSTALFORGE_SEED)");
  verify->add_option("--budget", va.budget, "term budget for exact mode");
  verify->add_option("--box", va.box, "box radius for the trop suite");
  verify->add_option("--out", va.out, "write the report here instead of stdout");
  verify->add_flag("--corrupt", va.corrupt, "perturb the crystal under test (negative control)");
  verify->add_flag("--timing", va.timing, "include wall-clock seconds per suite");

  TropArgs ta;
  auto* trop = app.add_subcommand("trop", "tropicalize a positive chart to a PL map");
  trop->add_option("--cell", ta.cell, "reduced word, e.g. 1,2,1");
  trop->add_option("--group", ta.group, "group")->check(CLI::IsMember(groups));
  trop->add_option("--e", ta.index, "index i of the emitted e_i (default: first)");
  trop->add_flag("--crystal", ta.crystal, "emit the whole combinatorial crystal");
  trop->add_option("--input", ta.input, "JSON chart description");
  trop->add_option("--out", ta.out, "output path");

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "crystal graph on a box as DOT");
  graph->add_option("--elementary", ga.elementary, "elementary crystal B_i");
  graph->add_option("--cell", ga.cell, "tropicalized cell of this word");
  graph->add_option("--group", ga.group, "group")->check(CLI::IsMember(groups));
  graph->add_option("--box", ga.box, "box radius");
  graph->add_option("--out", ga.out, "output path");

  WeylArgs wa;
  auto* weyl = app.add_subcommand("weyl", "Weyl group combinatorics");
  weyl->add_option("--group", wa.group, "group")->check(CLI::IsMember(groups));
  weyl->add_flag("--special", wa.special, "report whether w is special");
  weyl->add_option("--J", wa.J, "subset of simple roots");
  weyl->add_option("--w", wa.w, "element for --special (default w_{L_J,G})");
  weyl->add_option("--star", wa.star, "Demazure product of a word");
  weyl->add_option("--project", wa.project, "projection onto W_J of a word");
  weyl->add_option("--lattice", wa.lattice, "rank of T_w for a word");
  weyl->add_option("--out", wa.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  va.seedGiven = seedOpt->count() > 0;

  try {
    if (*verify) return runVerify(va);
    if (*trop) return runTrop(ta);
    if (*graph) return runGraph(ga);
    if (*weyl) return runWeyl(wa);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotCertifiedPositive& e) {
    std::cerr << "NotCertifiedPositive: " << e.what() << "\n";
    return kViolation;
  } catch (const NotSupported& e) {
    std::cerr << "not supported: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
  return kUsage;
}
