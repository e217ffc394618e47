// eqgeo: command-line front end. JSON results on stdout, JSON diagnostics on
// stderr. Exit codes: 0 ok, 1 rejected certificate, 2 invalid input or no
// exact method, 3 budget exhausted.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "eqgeo/backends.hpp"
#include "eqgeo/certificate.hpp"
#include "eqgeo/decomposition.hpp"
#include "eqgeo/dsl.hpp"
#include "eqgeo/errors.hpp"
#include "eqgeo/group_io.hpp"
#include "eqgeo/quotient.hpp"
#include "eqgeo/radical.hpp"
#include "eqgeo/topology.hpp"

namespace fs = std::filesystem;
using namespace eqgeo;

namespace {

struct Options {
  std::string group, set, lambda, out, method = "auto", cert;
  std::vector<std::string> words;
  std::string tuple;
  std::size_t budget = 0, window = 16, primes = 3;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Set file with its group optionally replaced by --group.
json load_set_json(const Options& o) {
  if (o.set.empty()) throw ValidationError("--set is required");
  json j = read_json_file(o.set);
  if (!o.group.empty()) j["group"] = fs::absolute(o.group).string();
  return j;
}

fs::path set_dir(const Options& o) { return fs::path(o.set).parent_path(); }

GroupPtr require_group(const Options& o) {
  if (o.group.empty()) throw ValidationError("--group is required");
  return load_group(o.group);
}

void emit(const json& j) { std::cout << j.dump(2, ' ', false, json::error_handler_t::replace) << "\n"; }

int cmd_eval(const Options& o) {
  auto g = require_group(o);
  if (o.words.size() != 1) throw ValidationError("eval needs exactly one --word");
  Tuple v = o.tuple.empty() ? Tuple{} : parse_tuple_text(o.tuple, *g);
  auto w = parse_word(o.words[0], g, v.size());
  emit({{"word", print_word(w)}, {"tuple", tuple_to_json(v, *g)}, {"value", g->serialize(evaluate(w, v, *g))}});
  return 0;
}

int cmd_witness(const Options& o) {
  CoefficientMode mode;
  auto e = TupleSet::from_json(load_set_json(o), set_dir(o), &mode);
  WitnessCertificate cert;
  if (o.method == "auto")
    cert = witness(e, mode, o.budget);
  else if (o.method == "abelian")
    cert = witness_abelian(e, mode);
  else if (o.method == "product")
    cert = witness_product(e, mode, o.budget);
  else if (o.method == "finite-extension")
    cert = witness_finite_extension(e, mode, o.budget);
  else
    throw ValidationError("unknown --method '" + o.method + "'");
  auto j = cert.to_json();
  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + o.out);
    out << certificate_text(j);
  }
  emit(j);
  return 0;
}

int cmd_decompose(const Options& o) {
  auto g = require_group(o);
  auto a = std::dynamic_pointer_cast<const SemidirectGroup>(g);
  if (!a) throw ValidationError("decompose needs a semidirect group");
  if (o.words.size() != 1) throw ValidationError("decompose needs exactly one --word");
  if (o.lambda.empty()) throw ValidationError("--lambda is required");
  Tuple s = parse_tuple_text(o.lambda, a->top());
  auto w = parse_word(o.words[0], g, s.size());
  emit(decompose_word(w, s).to_json(*a));
  return 0;
}

int cmd_chain(const Options& o) {
  if (o.set.empty()) throw ValidationError("--set is required");
  std::ifstream in(o.set);
  if (!in) throw ValidationError("cannot open " + o.set);
  std::vector<TupleSet> stream;
  CoefficientMode mode;
  json head;
  std::vector<json> cumulative;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ValidationError(std::string("chain stream: ") + e.what());
    }
    if (head.is_null()) {
      head = j;
      if (!o.group.empty()) head["group"] = fs::absolute(o.group).string();
    } else {
      for (const char* key : {"group", "arity", "coefficients"})
        if (j.contains(key) && j.at(key) != head.at(key)) throw ValidationError("chain stream changes its " + std::string(key));
    }
    for (const auto& t : j.value("tuples", json::array())) cumulative.push_back(t);
    json full = head;
    full["tuples"] = cumulative;
    stream.push_back(TupleSet::from_json(full, set_dir(o), &mode));
  }
  emit(chain_monitor(stream, mode, o.window, o.budget).to_json());
  return 0;
}

int cmd_closure(const Options& o) {
  CoefficientMode mode;
  auto e = TupleSet::from_json(load_set_json(o), set_dir(o), &mode);
  auto c = closure(e, mode, o.budget);
  auto j = c.to_json();
  j["group"] = e.group()->to_json();
  emit(j);
  return 0;
}

int cmd_qmodz(const Options& o) {
  QmodZGroup q;
  emit(qmodz_counterexample(o.primes).to_json(q));
  return 0;
}

std::vector<Word> gt_words(const Options& o, const RadicalUnion& r, std::size_t count) {
  if (o.words.size() != count) throw ValidationError("expected " + std::to_string(count) + " --word options");
  std::vector<Word> out;
  for (const auto& w : o.words) out.push_back(parse_word(w, r.group, 1, {VarStyle::TX, 1}));
  return out;
}

int cmd_quotient_eq(const Options& o) {
  auto r = RadicalUnion::from_json(load_set_json(o), set_dir(o));
  QuotientGroup h(r);
  auto w = gt_words(o, r, 2);
  emit({{"p", print_word(w[0], {VarStyle::TX, 1})},
        {"q", print_word(w[1], {VarStyle::TX, 1})},
        {"equal", quotient_eq(w[0], w[1], r)}});
  return 0;
}

int cmd_r_member(const Options& o) {
  auto r = RadicalUnion::from_json(load_set_json(o), set_dir(o));
  auto w = gt_words(o, r, 1);
  auto j = r_membership(w[0], r).to_json(*r.group);
  j["word"] = print_word(w[0], {VarStyle::TX, 1});
  emit(j);
  return 0;
}

int cmd_check(const Options& o) {
  CheckResult result;
  try {
    result = check_certificate_text(slurp(o.cert));
  } catch (const std::exception& e) {
    result = {false, {e.what()}};
  }
  emit(result.to_json());
  return result.valid ? 0 : 1;
}

void diagnose(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump(-1, ' ', false, json::error_handler_t::replace) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equations over groups: radicals, witnesses and certificates"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", o.group, "group definition file");
    sub->add_option("--budget", o.budget, "element budget for word searches");
  };
  auto* eval = app.add_subcommand("eval", "evaluate a word at a tuple");
  common(eval);
  eval->add_option("--word", o.words)->required();
  eval->add_option("--tuple", o.tuple, "comma separated element literals");

  auto* wit = app.add_subcommand("witness", "finite E0 with Rad(E0) = Rad(E), as a certificate");
  common(wit);
  wit->add_option("--set", o.set)->required();
  wit->add_option("--out", o.out, "also write the canonical certificate here");
  wit->add_option("--method", o.method)->check(CLI::IsMember({"auto", "abelian", "product", "finite-extension"}));

  auto* dec = app.add_subcommand("decompose", "split a word over T x| H at a lambda tuple");
  common(dec);
  dec->add_option("--word", o.words)->required();
  dec->add_option("--lambda", o.lambda)->required();

  auto* chain = app.add_subcommand("chain", "monitor an ascending chain given as JSON lines");
  common(chain);
  chain->add_option("--set", o.set)->required();
  chain->add_option("--window", o.window);

  auto* clo = app.add_subcommand("closure", "Zariski closure of a finite set");
  common(clo);
  clo->add_option("--set", o.set)->required();

  auto* qz = app.add_subcommand("qmodz-demo", "strict chain of radicals over Q/Z");
  qz->add_option("--primes", o.primes)->check(CLI::Range(2, 200));

  auto* qeq = app.add_subcommand("quotient-eq", "equality in G[t]/R");
  common(qeq);
  qeq->add_option("--set", o.set, "radical union file")->required();
  qeq->add_option("--word", o.words)->required();

  auto* rm = app.add_subcommand("r-member", "membership in R");
  common(rm);
  rm->add_option("--set", o.set, "radical union file")->required();
  rm->add_option("--word", o.words)->required();

  auto* chk = app.add_subcommand("check", "re-validate a witness certificate");
  chk->add_option("certificate", o.cert)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    diagnose("usage", e.what());
    return 2;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*wit) return cmd_witness(o);
    if (*dec) return cmd_decompose(o);
    if (*chain) return cmd_chain(o);
    if (*clo) return cmd_closure(o);
    if (*qz) return cmd_qmodz(o);
    if (*qeq) return cmd_quotient_eq(o);
    if (*rm) return cmd_r_member(o);
    if (*chk) return cmd_check(o);
  } catch (const BudgetExceeded& e) {
    diagnose("budget", e.what());
    return 3;
  } catch (const Undecided& e) {
    diagnose("undecided", e.what());
    return 2;
  } catch (const ValidationError& e) {
    diagnose("validation", e.what());
    return 2;
  } catch (const std::exception& e) {
    diagnose("internal", e.what());
    return 2;
  }
  return 2;
}
