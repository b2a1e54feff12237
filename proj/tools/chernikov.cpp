// Command-line front end for the classification library.
//
// Exit codes: 0 success or true, 1 false (for predicates), 2 input error, 3 internal error.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "chernikov/chernikov.hpp"

namespace fs = std::filesystem;
using namespace chernikov;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Options {
  bool json = false;
  std::string field;  // used when a document has no field line; empty falls back to CHERNIKOV_FIELD, then gf2
};

std::optional<FieldSpec> field_override(const Options& o) {
  if (o.field.empty()) return std::nullopt;
  return FieldSpec::parse(o.field);
}

const Field& cli_field(const Options& o) { return Field::get(o.field.empty() ? default_field_spec() : FieldSpec::parse(o.field)); }

/// Reads a document from a path, or stdin for "-" or an empty path. Errors are prefixed
/// with the source name.
PairDocument load(const std::string& path, const Options& o) {
  const std::string name = path.empty() || path == "-" ? "<stdin>" : path;
  try {
    if (name == "<stdin>") return read_pair_document(std::cin, field_override(o));
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open file");
    return read_pair_document(in, field_override(o));
  } catch (const usage_error& e) {
    throw usage_error(name + ": " + e.what());
  }
}

AlternatingPair load_pair(const std::string& path, const Options& o) {
  AlternatingPair p = load(path, o).pair();
  if (auto v = validate(p)) throw usage_error(v->message());
  return p;
}

std::string gl2_text(const GL2Element& q) {
  const Field& f = *q.field;
  return "[[" + f.format(q.q11) + "," + f.format(q.q12) + "],[" + f.format(q.q21) + "," + f.format(q.q22) + "]]";
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_validate(const std::string& path, const Options& o) {
  const AlternatingPair p = load(path, o).pair();
  const auto v = validate(p);
  if (o.json) {
    emit({{"valid", !v}, {"violation", v ? to_json(*v) : json(nullptr)}});
  } else if (v) {
    std::cerr << "invalid: " << v->message() << "\n";
  } else {
    std::cout << "valid alternating pair, dim " << p.dim() << " over " << p.field().spec().to_string() << "\n";
  }
  return v ? kExitInput : kExitTrue;
}

int cmd_pfaffian(const std::string& path, const Options& o) {
  const BinaryForm pf = pfaffian_form(load_pair(path, o));
  if (o.json)
    emit(to_json(pf));
  else
    std::cout << to_string(pf) << "\n";
  return kExitTrue;
}

void print_class(const ClassFunction& rho) {
  if (rho.empty()) std::cout << "(empty)\n";
  for (auto& [key, mult] : rho.entries())
    std::cout << "rho(" << to_string(key.first) << ", " << key.second << ") = " << mult << "\n";
}

int cmd_decompose(const std::string& path, const Options& o) {
  const ClassFunction rho = decompose(load_pair(path, o));
  if (o.json)
    emit(to_json(rho));
  else
    print_class(rho);
  return kExitTrue;
}

int cmd_canonical(const std::string& path, const Options& o) {
  const ClassFunction rho = decompose(load_pair(path, o));
  const AlternatingPair normal = assemble(rho);
  if (o.json) {
    emit({{"class", to_json(rho)}, {"pair", to_json(PairDocument::of(normal))}});
  } else {
    std::cout << "# " << to_string(rho) << "\n" << to_string(normal);
  }
  return kExitTrue;
}

int cmd_weak_class(const std::string& path, const Options& o) {
  const CanonicalRep c = canonical_rep(decompose(load_pair(path, o)));
  if (o.json) {
    emit(to_json(c));
  } else {
    print_class(c.rho);
    std::cout << "witness Q = " << gl2_text(c.witness) << "\n";
  }
  return kExitTrue;
}

int cmd_equiv(const std::string& a, const std::string& b, const Options& o) {
  const AlternatingPair p = load_pair(a, o), r = load_pair(b, o);
  if (&p.field() != &r.field()) throw usage_error("the two documents use different fields");
  const WeakEquivalence w = weakly_equivalent(p, r);
  if (o.json)
    emit(to_json(w));
  else if (w.equivalent)
    std::cout << "weakly equivalent, witness Q = " << gl2_text(*w.witness) << "\n";
  else
    std::cout << "not weakly equivalent\n";
  return w.equivalent ? kExitTrue : kExitFalse;
}

int cmd_group(const std::string& path, std::optional<unsigned> exp, const Options& o) {
  const PairDocument doc = load(path, o);
  for (std::size_t k = 0; k < doc.matrices.size(); ++k)
    if (auto v = validate_alternating(doc.matrices[k], 'A')) throw usage_error("matrix " + doc.names[k] + ": " + v->message());
  const GroupPresentation pres = presentation_from_tuple(doc.matrices);
  std::optional<FiniteQuotient> q;
  if (exp) q.emplace(pres, *exp);
  if (o.json) {
    json j = to_json(pres);
    j["gap"] = to_gap(pres);
    if (q) j["quotient"] = {{"e", *exp}, {"log2_order", q->log2_order()}};
    emit(j);
    return kExitTrue;
  }
  std::cout << "generators:";
  for (unsigned i = 0; i < pres.num_h(); ++i) std::cout << " h" << i + 1;
  for (unsigned k = 0; k < pres.m(); ++k) std::cout << " a" << k + 1;
  std::cout << "\nrelators:\n";
  for (const std::string& r : relators(pres)) std::cout << "  " << r << "\n";
  std::cout << "gap: " << to_gap(pres) << "\n";
  if (q) std::cout << "quotient e=" << *exp << ": order 2^" << q->log2_order() << "\n";
  return kExitTrue;
}

int cmd_gen_block(const std::vector<std::string>& ids, const Options& o) {
  const Field& f = cli_field(o);
  std::vector<AlternatingPair> blocks;
  for (const std::string& id : ids) blocks.push_back(build_block(f, parse_block_id(id, f)));
  const PairDocument doc = PairDocument::of(direct_sum(f, blocks));
  if (o.json)
    emit(to_json(doc));
  else
    std::cout << to_string(doc);
  return kExitTrue;
}

int cmd_random(std::size_t dim, std::uint64_t seed, const Options& o) {
  const Field& f = cli_field(o);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elem> pick(0, f.size() - 1);
  AlternatingPair p = AlternatingPair::zero(f, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      p.a(i, j) = p.a(j, i) = pick(rng);
      p.b(i, j) = p.b(j, i) = pick(rng);
    }
  const PairDocument doc = PairDocument::of(p);
  if (o.json)
    emit(to_json(doc));
  else
    std::cout << to_string(doc);
  return kExitTrue;
}

struct CorpusEntry {
  std::string file;
  std::optional<ClassFunction> rho;
  std::optional<ClassFunction> weak;  // only when the field admits canonicalization
  std::string error;
};

CorpusEntry classify_file(const fs::path& path, const Options& o) {
  CorpusEntry e{path.filename().string(), std::nullopt, std::nullopt, {}};
  try {
    const ClassFunction rho = decompose(load_pair(path.string(), o));
    e.rho = rho;
    if (rho.field().degree() <= kMaxWeakEqDegree) e.weak = canonical_rep(rho).rho;
  } catch (const usage_error& ex) {
    e.error = ex.what();
  } catch (const domain_error& ex) {
    e.error = ex.what();
  } catch (const std::exception& ex) {  // never let a worker thread terminate the process
    e.error = std::string("internal error: ") + ex.what();
  }
  return e;
}

/// Classifies every regular file in the directory; output is sorted by file name so it
/// does not depend on directory order or scheduling.
int cmd_corpus(const std::string& dir, unsigned jobs, const Options& o) {
  if (!fs::is_directory(dir)) throw usage_error(dir + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& ent : fs::directory_iterator(dir))
    if (ent.is_regular_file()) files.push_back(ent.path());
  std::sort(files.begin(), files.end());

  std::vector<CorpusEntry> out(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < files.size();) out[i] = classify_file(files[i], o);
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(jobs, files.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::map<std::string, std::vector<std::string>> classes;  // weak class text -> files
  bool failed = false;
  for (const CorpusEntry& e : out) {
    failed |= !e.error.empty();
    if (e.weak) classes[to_string(*e.weak)].push_back(e.file);
  }
  if (o.json) {
    json files_j = json::array();
    for (const CorpusEntry& e : out) {
      json j = {{"file", e.file}};
      if (e.rho) j["class"] = to_json(*e.rho);
      if (e.weak) j["weak_class"] = to_json(*e.weak);
      if (!e.error.empty()) j["error"] = e.error;
      files_j.push_back(j);
    }
    json classes_j = json::array();
    for (auto& [key, members] : classes) classes_j.push_back(members);
    emit({{"files", files_j}, {"weak_classes", classes_j}});
  } else {
    for (const CorpusEntry& e : out) {
      if (!e.error.empty())
        std::cout << e.file << ": error: " << e.error << "\n";
      else
        std::cout << e.file << ": " << to_string(*e.rho) << "\n";
    }
    std::cout << classes.size() << " weak equivalence classes\n";
    for (auto& [key, members] : classes) {
      std::cout << " ";
      for (const std::string& m : members) std::cout << " " << m;
      std::cout << "\n";
    }
  }
  return failed ? kExitInput : kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify pairs of alternating forms over GF(2^k) and build the associated 2-groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Print JSON instead of text");
  app.add_option("--field", o.field, "Field spec (gf2 or gf2^k[:0xMM]) for documents without a field line; overrides CHERNIKOV_FIELD");

  std::string file, file2, dir;
  std::vector<std::string> ids;
  std::optional<unsigned> exp;
  std::size_t dim = 4;
  std::uint64_t seed = 1;
  unsigned jobs = 0;
  int rc = kExitTrue;

  auto file_cmd = [&](const char* name, const char* help, auto fn) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("file", file, "Pair document; '-' or absent reads stdin");
    c->callback([&, fn] { rc = fn(file, o); });
    return c;
  };
  file_cmd("validate", "Check that both matrices are alternating", cmd_validate);
  file_cmd("pfaffian", "Print the Pfaffian form of x1 A + x2 B", cmd_pfaffian);
  file_cmd("decompose", "Print the congruence class function", cmd_decompose);
  file_cmd("canonical", "Print the block-diagonal normal form under congruence", cmd_canonical);
  file_cmd("weak-class", "Print the weak-equivalence orbit representative and witness", cmd_weak_class);

  CLI::App* equiv = app.add_subcommand("equiv", "Decide weak equivalence of two pairs");
  equiv->add_option("file1", file, "First pair document")->required();
  equiv->add_option("file2", file2, "Second pair document")->required();
  equiv->callback([&] { rc = cmd_equiv(file, file2, o); });

  CLI::App* group = app.add_subcommand("group", "Print the group presentation of a GF(2) pair or tuple");
  group->add_option("file", file, "Document with one or more matrices; '-' or absent reads stdin");
  group->add_option("--quotient-exp", exp, "Also build the finite quotient with bottom (Z/2^e)^m")
      ->check(CLI::Range(1u, 30u));
  group->callback([&] { rc = cmd_group(file, exp, o); });

  CLI::App* gen = app.add_subcommand("gen-block", "Print a canonical block, or the direct sum of several");
  gen->add_option("ids", ids, "Block ids: fin:<poly>^<n>, inf:<n>, plus:<eps>")->required();
  gen->callback([&] { rc = cmd_gen_block(ids, o); });

  CLI::App* rnd = app.add_subcommand("random", "Print a random alternating pair");
  rnd->add_option("--dim", dim, "Dimension")->capture_default_str();
  rnd->add_option("--seed", seed, "Generator seed")->capture_default_str();
  rnd->callback([&] { rc = cmd_random(dim, seed, o); });

  CLI::App* corpus = app.add_subcommand("corpus", "Classify every pair document in a directory");
  corpus->add_option("dir", dir, "Directory of pair documents")->required();
  corpus->add_option("--jobs", jobs, "Worker threads (0: one per core)")->capture_default_str();
  corpus->callback([&] { rc = cmd_corpus(dir, jobs, o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return rc;
}
