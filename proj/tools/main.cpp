#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "greenseq/greenseq.hpp"

namespace fs = std::filesystem;
using namespace greenseq;

namespace {

constexpr const char* kVersion = "greenseq 1.0.0";

// exit-code contract: 0 ok, 2 parse, 3 invalid index, 4 domain
// precondition, 5 internal assertion (with a reproduction dump)
constexpr int kExitParse = 2;
constexpr int kExitIndex = 3;
constexpr int kExitDomain = 4;
constexpr int kExitInternal = 5;

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<int> parse_seq(const std::string& csv) {
  std::vector<int> seq;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    try {
      seq.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ParseError("bad sequence entry: " + tok);
    }
  }
  return seq;
}

std::string verdict_line(const VerdictResult& r) {
  switch (r.verdict) {
    case Verdict::MaximalGreen:
      return to_string(r.verdict) + " length=" + std::to_string(r.length);
    case Verdict::Reddening:
      return to_string(r.verdict) + " length=" + std::to_string(r.length) +
             " step=" + std::to_string(*r.step);
    case Verdict::NotGreen:
      return to_string(r.verdict) + " step=" + std::to_string(*r.step);
    default:
      return to_string(r.verdict);
  }
}

void write_report(const std::string& path, const std::string& command,
                  nlohmann::json inputs, nlohmann::json payload) {
  nlohmann::json report{{"command", command},
                        {"inputs", std::move(inputs)},
                        {"version", kVersion},
                        {"payload", std::move(payload)}};
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << report.dump(2) << "\n";
}

void dump_reproduction(int argc, char** argv, const std::string& what) {
  nlohmann::json j{{"version", kVersion}, {"error", what}};
  for (int i = 0; i < argc; ++i) j["argv"].push_back(argv[i]);
  std::ofstream out("greenseq-repro.json");
  out << j.dump(2) << "\n";
  std::cerr << "reproduction dumped to greenseq-repro.json\n";
}

void require_eta_covers(const ExchangeMatrix& B, const Layering& eta) {
  for (int v : B.ex()) {
    if (!eta.contains(v)) {
      throw ParseError("eta has no entry for vertex " + std::to_string(v));
    }
  }
}

// Certificates whose hypotheses hold must certify MaximalGreen; anything
// else is an implementation bug per the counterexample policy.
void enforce_no_contradiction(const Certificate& cert) {
  if (cert.contradiction) {
    throw SignIncoherent("theorem contradiction on instance " +
                         cert.instance_digest);
  }
}

int eta_size(const Layering& eta) {
  return static_cast<int>(eta.domain().size());
}

struct CorpusOptions {
  std::string family = "disjoint-chains";
  std::string dir = "corpus";
  std::string sizes = "2,2";
  int n = 4;
  double density = 0.5;
  std::uint64_t seed = 20240815;
  int count = 10;
  int jobs = 1;
};

InstanceFamily corpus_family(const CorpusOptions& opt) {
  auto kind = family_from_string(opt.family);
  if (!kind) throw ParseError("unknown family: " + opt.family);
  InstanceFamily fam;
  fam.kind = *kind;
  for (int s : parse_seq(opt.sizes)) fam.level_sizes.push_back(s);
  fam.n = opt.n;
  fam.density = opt.density;
  fam.seed = opt.seed;
  fam.count = opt.count;
  return fam;
}

nlohmann::json instance_to_json(const Instance& inst, const std::string& family) {
  nlohmann::json j{{"family", family},
                   {"matrix", inst.B.to_json()},
                   {"eta", inst.eta.to_json()},
                   {"seq", inst.seq},
                   {"layered_ok", inst.layered_ok},
                   {"digest", inst.digest}};
  if (inst.path) j["path"] = inst.path->to_json();
  return j;
}

int cmd_corpus_generate(const CorpusOptions& opt) {
  InstanceFamily fam = corpus_family(opt);
  std::vector<Instance> instances = generate(fam);
  fs::path dir = fs::path(opt.dir) / opt.family;
  fs::create_directories(dir);
  std::set<std::string> written;  // files are digest-keyed, so duplicates merge
  for (const Instance& inst : instances) {
    if (!written.insert(inst.digest).second) continue;
    std::ofstream out(dir / (inst.digest + ".json"));
    out << instance_to_json(inst, opt.family).dump(2) << "\n";
  }
  std::cout << "wrote " << written.size() << " instances to " << dir.string()
            << "\n";
  return 0;
}

int cmd_corpus_verify(const CorpusOptions& opt) {
  std::vector<fs::path> files;
  if (!fs::exists(opt.dir)) throw ParseError("no such directory: " + opt.dir);
  for (const auto& entry : fs::recursive_directory_iterator(opt.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  struct Row {
    std::string digest;
    std::string verdict;
    bool applies = false;
    bool contradiction = false;
  };
  std::vector<Row> rows(files.size());
  std::size_t jobs = std::max(1, opt.jobs);
  std::vector<std::thread> workers;
  std::vector<std::string> errors(files.size());
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w]() {
      for (std::size_t i = w; i < files.size(); i += jobs) {
        try {
          nlohmann::json doc = read_json(files[i].string());
          ExchangeMatrix B = ExchangeMatrix::from_json(doc.at("matrix"));
          Layering eta = Layering::from_json(doc.at("eta"));
          std::vector<int> seq = doc.at("seq").get<std::vector<int>>();
          Certificate cert = verify_theorem_b(B, eta, seq);
          rows[i] = {cert.instance_digest, to_string(cert.result.verdict),
                     cert.theorem_applies, cert.contradiction};
        } catch (const std::exception& e) {
          errors[i] = files[i].string() + ": " + e.what();
        }
      }
    });
  }
  for (std::thread& t : workers) t.join();
  for (const std::string& e : errors) {
    if (!e.empty()) throw ParseError(e);
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.digest < b.digest; });
  int contradictions = 0;
  for (const Row& r : rows) {
    std::cout << r.digest << " " << r.verdict
              << (r.applies ? " theorem" : " empirical") << "\n";
    if (r.contradiction) ++contradictions;
  }
  std::cout << "verified " << rows.size() << " instances, " << contradictions
            << " contradictions\n";
  if (contradictions > 0) {
    throw SignIncoherent("corpus contains theorem contradictions");
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact mutation combinatorics for exchange matrices and "
               "valued quivers: green sequences, layered T-systems, and "
               "permutation-path derived sequences"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // mutate
  std::string matrix_file, seq_csv, report_path, eta_file, word_csv;
  int at_vertex = 0;
  auto* mutate = app.add_subcommand("mutate", "Mutate an exchange matrix");
  mutate->add_option("matrix", matrix_file)->required();
  auto* at_opt = mutate->add_option("--at", at_vertex, "single vertex");
  auto* seq_opt = mutate->add_option("--seq", seq_csv, "comma-separated vertices");
  mutate->callback([&]() {
    if ((at_opt->count() == 0) == (seq_opt->count() == 0)) {
      throw ParseError("mutate needs exactly one of --at / --seq");
    }
    ExchangeMatrix B = ExchangeMatrix::from_json(read_json(matrix_file));
    std::vector<int> seq =
        at_opt->count() ? std::vector<int>{at_vertex} : parse_seq(seq_csv);
    std::cout << B.mutate_sequence(seq).to_json().dump(2) << "\n";
  });

  // check-green
  auto* check = app.add_subcommand("check-green", "Classify a mutation sequence");
  check->add_option("matrix", matrix_file)->required();
  check->add_option("--seq", seq_csv)->required();
  check->add_option("--report", report_path, "write a run report");
  check->callback([&]() {
    ExchangeMatrix B = ExchangeMatrix::from_json(read_json(matrix_file));
    std::vector<int> seq = parse_seq(seq_csv);
    VerdictResult r = verdict(B, seq);
    std::cout << verdict_line(r) << "\n";
    if (!report_path.empty()) {
      nlohmann::json payload{{"verdict", to_string(r.verdict)},
                             {"length", r.length}};
      if (r.step) payload["step"] = *r.step;
      if (r.vertex) payload["vertex"] = *r.vertex;
      write_report(report_path, "check-green",
                   {{"matrix", B.to_json()}, {"seq", seq}}, payload);
    }
  });

  // tsystem
  bool enumerate = false;
  std::size_t limit = 100;
  auto* tsystem = app.add_subcommand("tsystem", "Certify full layered T-systems");
  tsystem->add_option("matrix", matrix_file)->required();
  tsystem->add_option("eta", eta_file)->required();
  auto* tseq_opt = tsystem->add_option("--seq", seq_csv);
  tsystem->add_flag("--enumerate", enumerate, "run every full shuffle");
  tsystem->add_option("--limit", limit, "enumeration cap");
  tsystem->callback([&]() {
    if ((tseq_opt->count() == 0) == !enumerate) {
      throw ParseError("tsystem needs exactly one of --seq / --enumerate");
    }
    ExchangeMatrix B = ExchangeMatrix::from_json(read_json(matrix_file));
    Layering eta = Layering::from_json(read_json(eta_file));
    if (eta.mode() != LayeringMode::ExchangeOnly) {
      throw WrongMode("tsystem expects an exchange-mode layering");
    }
    require_eta_covers(B, eta);
    std::vector<std::vector<int>> seqs;
    if (enumerate) {
      seqs = enumerate_full_shuffles(eta, limit);
    } else {
      seqs.push_back(parse_seq(seq_csv));
    }
    for (const std::vector<int>& seq : seqs) {
      Certificate cert = verify_theorem_b(B, eta, seq);
      std::cout << cert.to_json().dump() << "\n";
      enforce_no_contradiction(cert);
    }
  });

  // paths
  int path_n = 3;
  bool words = false;
  auto* paths = app.add_subcommand("paths", "Enumerate contiguous paths");
  paths->add_option("--n", path_n)->required();
  paths->add_option("--limit", limit);
  paths->add_flag("--words", words, "print reduced words");
  paths->callback([&]() {
    if (path_n < 1) throw InvalidIndex("n must be positive");
    for (const ContiguousPath& path : enumerate_contiguous_paths(path_n, limit)) {
      if (words) {
        std::string line;
        for (const auto& s : path.steps) {
          if (!line.empty()) line += " ";
          line += std::to_string(s.p);
        }
        std::cout << line << "\n";
      } else {
        std::cout << path.to_json().dump() << "\n";
      }
    }
  });

  // theorem-a
  int path_index = -1;
  auto* thma = app.add_subcommand("theorem-a", "Certify a path-derived sequence");
  thma->add_option("eta", eta_file)->required();
  thma->add_option("--matrix", matrix_file, "optional exchange matrix");
  auto* word_opt = thma->add_option("--word", word_csv, "reduced word");
  auto* index_opt = thma->add_option("--path-index", path_index);
  thma->callback([&]() {
    if ((word_opt->count() == 0) == (index_opt->count() == 0)) {
      throw ParseError("theorem-a needs exactly one of --word / --path-index");
    }
    Layering eta = Layering::from_json(read_json(eta_file));
    if (eta.mode() != LayeringMode::Full) {
      throw WrongMode("theorem-a expects a full-mode layering");
    }
    const int n = eta_size(eta);
    ContiguousPath path;
    if (word_opt->count()) {
      path = word_to_path(ReducedWord{parse_seq(word_csv)}, n);
    } else {
      std::vector<ContiguousPath> all = enumerate_contiguous_paths(
          n, static_cast<std::size_t>(path_index) + 1);
      if (path_index < 0 || static_cast<std::size_t>(path_index) >= all.size()) {
        throw InvalidIndex("no path with index " + std::to_string(path_index));
      }
      path = all[path_index];
    }
    ExchangeMatrix B = matrix_file.empty()
                           ? default_path_matrix(eta)
                           : ExchangeMatrix::from_json(read_json(matrix_file));
    Certificate cert = verify_theorem_a(B, eta, path);
    std::cout << cert.to_json().dump(2) << "\n";
    enforce_no_contradiction(cert);
  });

  // export-dot
  std::string graph_file;
  auto* dot = app.add_subcommand("export-dot", "Render a matrix or quiver as DOT");
  dot->add_option("input", graph_file)->required();
  dot->add_option("--eta", eta_file, "layering for ranked layout");
  dot->callback([&]() {
    nlohmann::json doc = read_json(graph_file);
    ValuedIceQuiver Q = doc.contains("arrows")
                            ? ValuedIceQuiver::from_json(doc)
                            : to_quiver(ExchangeMatrix::from_json(doc));
    std::optional<Layering> eta;
    if (!eta_file.empty()) eta = Layering::from_json(read_json(eta_file));
    std::cout << export_dot(Q, eta);
  });

  // corpus
  CorpusOptions copt;
  auto* corpus = app.add_subcommand("corpus", "Manage instance corpora");
  corpus->require_subcommand(1);
  auto* gen = corpus->add_subcommand("generate", "Write an instance family");
  gen->add_option("--family", copt.family)->required();
  gen->add_option("--out", copt.dir);
  gen->add_option("--sizes", copt.sizes, "level sizes, comma-separated");
  gen->add_option("--n", copt.n);
  gen->add_option("--density", copt.density);
  gen->add_option("--seed", copt.seed);
  gen->add_option("--count", copt.count);
  gen->callback([&]() { cmd_corpus_generate(copt); });
  auto* ver = corpus->add_subcommand("verify", "Re-verify a corpus directory");
  ver->add_option("--dir", copt.dir)->required();
  ver->add_option("--jobs", copt.jobs);
  ver->callback([&]() { cmd_corpus_verify(copt); });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const SignIncoherent& e) {
    std::cerr << "internal assertion: " << e.what() << "\n";
    dump_reproduction(argc, argv, e.what());
    return kExitInternal;
  } catch (const InvalidIndex& e) {
    std::cerr << "invalid index: " << e.what() << "\n";
    return kExitIndex;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
