// Command-line frontend for the blockip library: instance generation,
// restructuring, verification, Graver reports, tree-depth reports and
// JSON/MPS export.  Exit codes: 0 success, 1 validation failure, 2 usage
// error.

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blockip/encoding.hpp"
#include "blockip/graver.hpp"
#include "blockip/io.hpp"
#include "blockip/oracle.hpp"
#include "blockip/reduce.hpp"
#include "blockip/restructure.hpp"
#include "blockip/treedepth.hpp"

namespace {

using blockip::Index;
using blockip::Int;

/// Flag-level problems that should exit with status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

Int parse_int(const std::string& s, const std::string& what) {
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    throw UsageError(what + ": '" + s + "' is not an integer");
  }
}

std::vector<Int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<Int> out;
  if (s.empty()) return out;
  for (const std::string& part : split(s, ',')) {
    if (part.empty()) throw UsageError(what + ": empty entry in list");
    out.push_back(parse_int(part, what));
  }
  return out;
}

std::vector<Index> parse_index_list(const std::string& s,
                                    const std::string& what) {
  std::vector<Index> out;
  for (const Int& v : parse_int_list(s, what)) {
    if (!v.fits_slong_p() || v < 1)
      throw UsageError(what + ": entries must be small positive integers");
    out.push_back(static_cast<Index>(v.get_si()));
  }
  return out;
}

std::string join_ints(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out;
}

std::string join_indices(const std::vector<Index>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

blockip::InstanceDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return blockip::parse_json(buf.str());
}

/// Writes the document to --out, or to stdout when no path was given; the
/// human-readable summary goes wherever the document is not.
void write_document(const blockip::InstanceDocument& doc,
                    const std::string& out_path, const std::string& summary) {
  const std::string text = blockip::emit_json(doc);
  if (out_path.empty()) {
    std::cout << text;
    std::cerr << summary;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
    std::cout << summary;
  }
}

std::string profile_string(const blockip::BlockProfile& p) {
  return std::string(p.kind == blockip::StructureKind::MultiStage
                         ? "multi-stage"
                         : "tree-fold") +
         " sigma=(" + join_indices(p.sigma) + ")";
}

// ---- generate --------------------------------------------------------------

struct GenerateNfoldArgs {
  std::string a, b, out;
  Index sigma1 = 1;
  Index tau = 0;  // > 0: lift to a tree-fold with this many levels
};

void run_generate_nfold(const GenerateNfoldArgs& args) {
  blockip::SubsetSumInstance ss;
  ss.a = parse_int_list(args.a, "--a");
  ss.b = parse_int(args.b, "--b");
  blockip::NfoldResult res = blockip::build_nfold(ss, args.sigma1);

  blockip::InstanceDocument doc;
  blockip::Provenance prov;
  prov.params["a"] = join_ints(ss.a);
  prov.params["b"] = ss.b.get_str();
  prov.params["sigma1"] = std::to_string(args.sigma1);
  prov.params["delta"] = res.certificate.params.delta.get_str();
  prov.params["t"] = std::to_string(res.certificate.params.t);
  prov.certificate = res.certificate.forward_map() + " // " +
                     res.certificate.backward_map();

  std::ostringstream summary;
  summary << "subset-sum: a=(" << join_ints(ss.a) << ") b=" << ss.b.get_str()
          << " sigma1=" << args.sigma1 << "\n"
          << "parameters: delta=" << res.certificate.params.delta.get_str()
          << " t=" << res.certificate.params.t << "\n";

  if (args.tau > 0) {
    blockip::LiftResult lifted =
        blockip::lift_nfold_to_treefold(res.instance, args.tau);
    doc.instance = std::move(lifted.instance);
    prov.source = "subset-sum (lifted)";
    prov.params["tau"] = std::to_string(args.tau);
    summary << "lifted to " << profile_string(*doc.instance.profile) << "\n";
  } else {
    doc.instance = std::move(res.instance);
    prov.source = "subset-sum";
  }
  summary << "instance: " << doc.instance.rows() << " rows, "
          << doc.instance.cols() << " cols, "
          << profile_string(*doc.instance.profile) << "\n";
  doc.provenance = std::move(prov);
  write_document(doc, args.out, summary.str());
}

struct GenerateMultistageArgs {
  std::vector<std::string> blocks;
  std::string z_upper = "3";
  std::string out;
  Index tau = 2;
};

void run_generate_multistage(const GenerateMultistageArgs& args) {
  std::vector<blockip::TwoStageBlock> blocks;
  for (const std::string& spec : args.blocks) {
    const std::vector<Int> triple = parse_int_list(spec, "--block");
    if (triple.size() != 3)
      throw UsageError("--block: expected three comma-separated values q,x,y");
    blocks.emplace_back(triple[0], triple[1], triple[2]);
  }
  if (blocks.empty()) throw UsageError("--block: at least one block required");
  const Int z_upper = parse_int(args.z_upper, "--z-upper");

  blockip::MultistageResult res =
      blockip::build_multistage(blocks, args.tau, z_upper);

  blockip::InstanceDocument doc;
  doc.instance = std::move(res.instance);
  blockip::Provenance prov;
  prov.source = "two-stage";
  std::string block_list;
  for (std::size_t i = 0; i < args.blocks.size(); ++i) {
    if (i) block_list += ";";
    block_list += args.blocks[i];
  }
  prov.params["blocks"] = block_list;
  prov.params["tau"] = std::to_string(args.tau);
  prov.params["s"] = std::to_string(res.certificate.s);
  prov.params["z_upper"] = z_upper.get_str();
  prov.certificate = res.certificate.forward_map() + " // " +
                     res.certificate.backward_map();
  doc.provenance = std::move(prov);

  std::ostringstream summary;
  summary << "two-stage: " << blocks.size() << " block(s), t=" << blocks[0].t
          << ", s=" << res.certificate.s << "\n"
          << "instance: " << doc.instance.rows() << " rows, "
          << doc.instance.cols() << " cols, "
          << profile_string(*doc.instance.profile) << "\n";
  write_document(doc, args.out, summary.str());
}

struct GenerateWitnessArgs {
  std::string kind = "multistage";
  std::string sigma;
  std::string delta = "2";
  std::string out;
};

void run_generate_witness(const GenerateWitnessArgs& args) {
  const std::vector<Index> sigma = parse_index_list(args.sigma, "--sigma");
  const Int delta = parse_int(args.delta, "--delta");

  blockip::WitnessResult w;
  if (args.kind == "multistage")
    w = blockip::witness_multistage(sigma, delta);
  else if (args.kind == "treefold")
    w = blockip::witness_treefold(sigma, delta);
  else
    throw UsageError("--kind: expected 'multistage' or 'treefold'");

  blockip::InstanceDocument doc;
  doc.instance.a = w.matrix;
  doc.instance.rhs.assign(static_cast<std::size_t>(w.matrix.rows()), Int(0));
  doc.instance.lower.assign(static_cast<std::size_t>(w.matrix.cols()),
                            blockip::Bound(-w.norm));
  doc.instance.upper.assign(static_cast<std::size_t>(w.matrix.cols()),
                            blockip::Bound(w.norm));
  doc.instance.objective.assign(static_cast<std::size_t>(w.matrix.cols()),
                                Int(0));
  doc.instance.profile = w.profile;

  blockip::Provenance prov;
  prov.source = "witness-family";
  prov.params["kind"] = args.kind;
  prov.params["sigma"] = join_indices(sigma);
  prov.params["delta"] = delta.get_str();
  prov.params["norm"] = w.norm.get_str();
  prov.certificate = args.kind == "multistage"
                         ? "Graver max-norm equals delta^(S-2) for S = "
                           "prod(sigma_i+1)"
                         : "Graver one-norm equals (delta^S-1)/(delta-1) for "
                           "S = prod(sigma_i+1)";
  doc.provenance = std::move(prov);

  std::ostringstream summary;
  summary << "witness: kind=" << args.kind << " "
          << profile_string(*doc.instance.profile)
          << " delta=" << delta.get_str() << "\n"
          << "extremal Graver norm: " << w.norm.get_str() << "\n";
  write_document(doc, args.out, summary.str());
}

// ---- restructure -----------------------------------------------------------

struct RestructureArgs {
  std::string in, out, kind, sigma, band = "bi";
};

void run_restructure(const RestructureArgs& args) {
  const blockip::InstanceDocument src = load_document(args.in);
  const std::vector<Index> sigma = parse_index_list(args.sigma, "--sigma");
  blockip::Band band;
  if (args.band == "bi")
    band = blockip::Band::Bi;
  else if (args.band == "tri")
    band = blockip::Band::Tri;
  else
    throw UsageError("--band: expected 'bi' or 'tri'");

  blockip::InstanceDocument doc;
  const auto cols = static_cast<std::size_t>(src.instance.cols());
  const auto rows = static_cast<std::size_t>(src.instance.rows());
  if (args.kind == "multistage") {
    blockip::RestructureResult res =
        blockip::to_multistage(src.instance.a, sigma, band);
    doc.instance.a = std::move(res.matrix);
    doc.instance.rhs = src.instance.rhs;  // rows stay in place
    doc.instance.lower.resize(cols);
    doc.instance.upper.resize(cols);
    doc.instance.objective.resize(cols);
    for (Index j = 1; j <= src.instance.cols(); ++j) {
      const auto to = static_cast<std::size_t>(res.permutation.col_perm(j) - 1);
      doc.instance.lower[to] = src.instance.lower[static_cast<std::size_t>(j - 1)];
      doc.instance.upper[to] = src.instance.upper[static_cast<std::size_t>(j - 1)];
      doc.instance.objective[to] =
          src.instance.objective[static_cast<std::size_t>(j - 1)];
    }
    doc.instance.profile = res.profile;
  } else if (args.kind == "treefold") {
    blockip::RestructureResult res =
        blockip::to_treefold(src.instance.a, sigma, band);
    doc.instance.a = std::move(res.matrix);
    doc.instance.rhs.resize(rows);
    for (Index i = 1; i <= src.instance.rows(); ++i)
      doc.instance.rhs[static_cast<std::size_t>(res.permutation.row_perm(i) - 1)] =
          src.instance.rhs[static_cast<std::size_t>(i - 1)];
    doc.instance.lower = src.instance.lower;  // columns stay in place
    doc.instance.upper = src.instance.upper;
    doc.instance.objective = src.instance.objective;
    doc.instance.profile = res.profile;
  } else {
    throw UsageError("--kind: expected 'multistage' or 'treefold'");
  }

  blockip::Provenance prov;
  prov.source = "restructure";
  prov.params["kind"] = args.kind;
  prov.params["sigma"] = join_indices(sigma);
  prov.params["band"] = args.band;
  prov.certificate =
      "banded input permuted into block structure; rows/columns carry their "
      "bounds and right-hand sides along";
  doc.provenance = std::move(prov);

  std::ostringstream summary;
  summary << "restructured to " << profile_string(*doc.instance.profile)
          << "\n";
  write_document(doc, args.out, summary.str());
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string path;
  long long budget = 10'000'000;
  int workers = 1;
};

int run_verify(const VerifyArgs& args) {
  blockip::InstanceDocument doc;
  try {
    doc = load_document(args.path);
  } catch (const blockip::SchemaError& e) {
    std::cout << "schema: FAIL (" << e.what() << ")\n";
    return 1;
  }
  const blockip::IPInstance& inst = doc.instance;
  std::cout << "instance: " << inst.rows() << " rows, " << inst.cols()
            << " cols\n";
  try {
    blockip::check_instance(inst);
  } catch (const std::invalid_argument& e) {
    std::cout << "check: FAIL (" << e.what() << ")\n";
    return 1;
  }
  std::cout << "check: ok\n";
  if (inst.profile)
    std::cout << "profile: " << profile_string(*inst.profile)
              << " (validates)\n";
  else
    std::cout << "profile: none\n";

  try {
    const blockip::FeasibilityResult res =
        blockip::feasible_enum(inst, args.budget, args.workers);
    if (res.feasible) {
      std::cout << "feasible: yes\nwitness:";
      for (const Int& v : *res.witness) std::cout << " " << v.get_str();
      std::cout << "\n";
    } else {
      std::cout << "feasible: no\n";
    }
  } catch (const blockip::BudgetExceeded&) {
    std::cout << "feasible: undetermined (enumeration budget exceeded)\n";
  } catch (const std::invalid_argument& e) {
    std::cout << "feasible: undetermined (" << e.what() << ")\n";
  }
  return 0;
}

// ---- graver ----------------------------------------------------------------

struct GraverArgs {
  std::string in;
  Index et = 0;
  std::string delta = "2";
  std::string cap = "1000000000";
};

int run_graver(const GraverArgs& args) {
  blockip::IntMatrix m;
  if (args.et > 0) {
    m = blockip::encoding_matrix(args.et, parse_int(args.delta, "--delta"));
  } else if (!args.in.empty()) {
    m = load_document(args.in).instance.a;
  } else {
    throw UsageError("graver: need either --et or --in");
  }
  const Int cap = parse_int(args.cap, "--cap");

  const blockip::IntMatrix kernel = blockip::kernel_lattice_basis(m);
  std::cout << "kernel rank: " << kernel.cols() << "\n";
  const blockip::GraverSet gs = blockip::graver_basis(m, cap);
  std::cout << "elements: " << 2 * gs.size() << " (" << gs.size()
            << " up to sign)\n";
  for (const auto& v : gs.elements) {
    std::cout << "  +- (";
    for (std::size_t i = 0; i < v.size(); ++i)
      std::cout << (i ? ", " : "") << v[i].get_str();
    std::cout << ")\n";
  }
  if (gs.truncated) {
    std::cout << "truncated: elements beyond cap " << cap.get_str()
              << " were dropped; norms unavailable\n";
    return 0;
  }
  if (gs.elements.empty()) {
    std::cout << "trivial kernel: no norms\n";
    return 0;
  }
  const blockip::GraverNorms norms = blockip::graver_norms(gs);
  std::cout << "g_inf = " << norms.max_norm.get_str() << "\n"
            << "g_1 = " << norms.one_norm.get_str() << "\n";
  return 0;
}

// ---- treedepth -------------------------------------------------------------

struct TreedepthArgs {
  std::string in;
  bool exact = false;
};

int run_treedepth(const TreedepthArgs& args) {
  const blockip::InstanceDocument doc = load_document(args.in);
  const blockip::IPInstance& inst = doc.instance;
  if (!inst.profile) {
    std::cout << "treedepth: FAIL (instance has no block profile)\n";
    return 1;
  }
  const blockip::TdDecomposition td =
      blockip::td_decomposition_from_profile(inst.a, *inst.profile);
  const blockip::Graph g =
      inst.profile->kind == blockip::StructureKind::MultiStage
          ? blockip::primal_graph(inst.a)
          : blockip::dual_graph(inst.a);
  const bool ok = blockip::validate_td(g, td);
  std::cout << "graph: "
            << (inst.profile->kind == blockip::StructureKind::MultiStage
                    ? "primal"
                    : "dual")
            << ", " << g.n << " vertices, " << g.edges.size() << " edges\n"
            << "decomposition height: " << td.height()
            << " (bound " << inst.profile->sigma_sum() << ")\n"
            << "valid: " << (ok ? "yes" : "no") << "\n";
  if (args.exact) {
    if (g.n > 10) {
      std::cout << "exact: unavailable (graph larger than 10 vertices)\n";
      return 1;
    }
    std::cout << "exact treedepth: " << blockip::exact_treedepth(g) << "\n";
  }
  return ok ? 0 : 1;
}

// ---- export ----------------------------------------------------------------

struct ExportArgs {
  std::string in, out, format = "mps";
};

void run_export(const ExportArgs& args) {
  const blockip::InstanceDocument doc = load_document(args.in);
  std::string text;
  if (args.format == "mps")
    text = blockip::emit_mps(doc.instance);
  else if (args.format == "json")
    text = blockip::emit_json(doc);
  else
    throw UsageError("--format: expected 'mps' or 'json'");
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + args.out);
    out << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for block-structured integer programs"};
  app.require_subcommand(1);
  int status = 0;

  // generate
  CLI::App* generate = app.add_subcommand("generate", "produce instances");
  generate->require_subcommand(1);

  auto nfold_args = std::make_shared<GenerateNfoldArgs>();
  CLI::App* gen_nfold = generate->add_subcommand(
      "nfold", "subset-sum to n-fold feasibility instance");
  gen_nfold->add_option("--a", nfold_args->a, "comma-separated item values");
  gen_nfold->add_option("--b", nfold_args->b, "target value")->required();
  gen_nfold->add_option("--sigma1", nfold_args->sigma1, "digit rows")
      ->required();
  gen_nfold->add_option("--out", nfold_args->out, "output JSON path");
  gen_nfold->callback([nfold_args] { run_generate_nfold(*nfold_args); });

  auto treefold_args = std::make_shared<GenerateNfoldArgs>();
  CLI::App* gen_treefold = generate->add_subcommand(
      "treefold", "subset-sum to deepened tree-fold instance");
  gen_treefold->add_option("--a", treefold_args->a,
                           "comma-separated item values");
  gen_treefold->add_option("--b", treefold_args->b, "target value")
      ->required();
  gen_treefold->add_option("--sigma1", treefold_args->sigma1, "digit rows")
      ->required();
  gen_treefold->add_option("--tau", treefold_args->tau, "tree-fold levels")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_treefold->add_option("--out", treefold_args->out, "output JSON path");
  gen_treefold->callback([treefold_args] {
    if (treefold_args->tau < 3)
      throw UsageError("--tau: deepening needs at least 3 levels");
    run_generate_nfold(*treefold_args);
  });

  auto ms_args = std::make_shared<GenerateMultistageArgs>();
  CLI::App* gen_ms = generate->add_subcommand(
      "multistage", "two-stage blocks to multi-stage instance");
  gen_ms->add_option("--block", ms_args->blocks,
                     "block as q,x,y (repeatable)");
  gen_ms->add_option("--tau", ms_args->tau, "target stage count")
      ->check(CLI::PositiveNumber);
  gen_ms->add_option("--z-upper", ms_args->z_upper, "upper bound for z");
  gen_ms->add_option("--out", ms_args->out, "output JSON path");
  gen_ms->callback([ms_args] { run_generate_multistage(*ms_args); });

  auto wit_args = std::make_shared<GenerateWitnessArgs>();
  CLI::App* gen_wit = generate->add_subcommand(
      "witness", "extremal Graver-norm witness family");
  gen_wit->add_option("--kind", wit_args->kind, "multistage or treefold");
  gen_wit->add_option("--sigma", wit_args->sigma, "stage/level sizes")
      ->required();
  gen_wit->add_option("--delta", wit_args->delta, "base");
  gen_wit->add_option("--out", wit_args->out, "output JSON path");
  gen_wit->callback([wit_args] { run_generate_witness(*wit_args); });

  // restructure
  auto rs_args = std::make_shared<RestructureArgs>();
  CLI::App* restructure = app.add_subcommand(
      "restructure", "permute a banded instance into block structure");
  restructure->add_option("--in", rs_args->in, "input JSON path")->required();
  restructure->add_option("--kind", rs_args->kind, "multistage or treefold")
      ->required();
  restructure->add_option("--sigma", rs_args->sigma, "stage/level sizes")
      ->required();
  restructure->add_option("--band", rs_args->band, "bi or tri");
  restructure->add_option("--out", rs_args->out, "output JSON path");
  restructure->callback([rs_args] { run_restructure(*rs_args); });

  // verify
  auto verify_args = std::make_shared<VerifyArgs>();
  CLI::App* verify =
      app.add_subcommand("verify", "validate an instance and report feasibility");
  verify->add_option("path", verify_args->path, "instance JSON path")
      ->required();
  verify->add_option("--budget", verify_args->budget,
                     "enumeration budget (value assignments)");
  verify->add_option("--workers", verify_args->workers,
                     "worker threads for enumeration");
  verify->callback([verify_args, &status] { status = run_verify(*verify_args); });

  // graver
  auto graver_args = std::make_shared<GraverArgs>();
  CLI::App* graver =
      app.add_subcommand("graver", "Graver basis and norms report");
  graver->add_option("--et", graver_args->et,
                     "use the doubling-chain matrix with this many columns");
  graver->add_option("--delta", graver_args->delta, "base for --et");
  graver->add_option("--in", graver_args->in, "instance JSON path");
  graver->add_option("--cap", graver_args->cap, "max-norm cap");
  graver->callback([graver_args, &status] { status = run_graver(*graver_args); });

  // treedepth
  auto td_args = std::make_shared<TreedepthArgs>();
  CLI::App* treedepth =
      app.add_subcommand("treedepth", "decomposition report from the profile");
  treedepth->add_option("--in", td_args->in, "instance JSON path")->required();
  treedepth->add_flag("--exact", td_args->exact,
                      "also compute the exact treedepth (<= 10 vertices)");
  treedepth->callback([td_args, &status] { status = run_treedepth(*td_args); });

  // export
  auto export_args = std::make_shared<ExportArgs>();
  CLI::App* exporter = app.add_subcommand("export", "write MPS or JSON");
  exporter->add_option("--in", export_args->in, "instance JSON path")
      ->required();
  exporter->add_option("--format", export_args->format, "mps or json");
  exporter->add_option("--out", export_args->out, "output path");
  exporter->callback([export_args] { run_export(*export_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const blockip::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return status;
}
