// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dualarc/arcs.hpp"
#include "dualarc/sharing.hpp"
#include "dualarc/veronese.hpp"

namespace dualarc::cli {

namespace {

namespace fs = std::filesystem;
using linalg::Subspace;
using linalg::Vector;

// Input problems map to kUsage.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

void write_file(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

arcs::Family load_family(const std::string& path) {
  auto in = open_in(path);
  try {
    return arcs::read_family(in);
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string params_text(const std::vector<int>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s;
}

// Dealing and simulation take arcs; a dual arc is dualized first.
arcs::Family as_arc(const arcs::Family& f, std::ostream& err) {
  if (f.kind() == arcs::FamilyKind::kArc) return f;
  err << "note: input is a dual arc; using its dual arc with parameters ";
  auto a = arcs::dualize(f);
  err << params_text(a.params()) << '\n';
  return a;
}

sharing::Variant variant_of(int scheme) {
  return scheme == 1 ? sharing::Variant::kHyperplaneSecret : sharing::Variant::kSubspaceSecret;
}

void print_table(std::ostream& out, const std::vector<sharing::AttackEstimate>& rows) {
  out << std::left << std::setw(4) << "i" << std::setw(14) << "p_exact" << std::setw(14) << "p_empirical"
      << std::setw(16) << "hits/trials" << std::setw(12) << "tolerance"
      << "ok\n";
  for (const auto& r : rows) {
    std::ostringstream emp, tol;
    emp << std::fixed << std::setprecision(6) << r.p_empirical;
    tol << std::fixed << std::setprecision(6) << r.tolerance;
    out << std::left << std::setw(4) << r.i << std::setw(14) << r.p_exact.str() << std::setw(14) << emp.str()
        << std::setw(16) << (std::to_string(r.matches) + "/" + std::to_string(r.trials)) << std::setw(12) << tol.str()
        << (r.within_tolerance ? "yes" : "NO") << '\n';
  }
}

int simulate_table(const sharing::ShareBundle& bundle, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                   std::ostream& out) {
  std::vector<sharing::AttackEstimate> rows;
  const auto last = std::min(bundle.leak_profile.size(), bundle.shares.size() + 1);
  for (std::size_t i = 0; i < last; ++i) {
    rows.push_back(sharing::simulate_attack(bundle, static_cast<int>(i), trials, mix_seed(seed) + i, workers));
  }
  print_table(out, rows);
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.within_tolerance; });
  return ok ? kOk : kFailed;
}

struct Options {
  std::uint32_t q = 0;
  int n = 0;
  int d = 1;
  bool arc = false;
  std::string in, out, out_dir, public_file;
  std::vector<std::string> share_files;
  int delta = -1;
  std::string mode = "exhaustive";
  std::size_t samples = 500;
  std::uint64_t seed = arcs::kDefaultVerifySeed;
  bool text = false;
  bool force = false;
  int scheme = 1;
  bool emit_secret = false;
  std::uint64_t trials = 30000;
  unsigned workers = 1;
};

int cmd_construct(const Options& o, std::ostream& out, std::ostream& err) {
  const veronese::VeroneseContext ctx(gf::make_field_of_order(o.q), o.n, o.d);
  const arcs::Family fam = o.arc ? veronese::build_arc(ctx) : veronese::build_dual_arc(ctx);
  if (!fam.params_well_formed()) err << "warning: degenerate parameters " << params_text(fam.params()) << '\n';
  if (o.arc && !veronese::construction2_condition(ctx)) {
    err << "note: q odd with (q^n-1)/(q-1) >= C(n+d,d+1) does not hold; elements computed as perps\n";
  }
  write_file(o.out, arcs::family_to_text(fam), out);
  std::ostream& info = o.out.empty() || o.out == "-" ? err : out;
  info << (o.arc ? "arc" : "dual arc") << " with " << fam.size() << " elements, parameters "
       << params_text(fam.params()) << '\n';
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& /*err*/) {
  const arcs::Family fam = load_family(o.in);
  arcs::VerifyOptions vo;
  vo.mode = o.mode == "sampled" ? arcs::VerifyMode::kSampled : arcs::VerifyMode::kExhaustive;
  vo.samples = o.samples;
  vo.seed = o.seed;
  const auto report = arcs::verify(fam, vo);
  out << (o.text ? arcs::to_text(report) : arcs::to_key_values(report));
  bool ok = report.axioms_hold;
  if (o.delta >= 0) {
    const auto h = arcs::verify_t_d1_hypotheses(fam, o.delta);
    if (o.text) {
      out << arcs::to_text(h);
    } else {
      out << "hypotheses_hold=" << (h.all_hold() ? "true" : "false") << '\n';
      out << "delta_bound=" << (h.delta_bound ? "true" : "false") << '\n';
    }
    ok = ok && h.all_hold();
  }
  return ok ? kOk : kFailed;
}

int cmd_dualize(const Options& o, std::ostream& out, std::ostream& err) {
  const arcs::Family d = arcs::dualize(load_family(o.in));
  write_file(o.out, arcs::family_to_text(d), out);
  err << "dual has parameters " << params_text(d.params()) << '\n';
  return kOk;
}

int cmd_extend(const Options& o, std::ostream& out, std::ostream& err) {
  const arcs::Family fam = load_family(o.in);
  if (!o.force) {
    const auto h = arcs::verify_t_d1_hypotheses(fam, o.delta);
    if (!h.all_hold()) {
      err << "hypotheses for extension do not hold (use --force to search anyway):\n" << arcs::to_text(h);
      return kFailed;
    }
  }
  arcs::ExtensionStats stats;
  const arcs::Family full = arcs::extend_deficient(fam, o.delta, &stats);
  write_file(o.out, arcs::family_to_text(full), out);
  err << "added " << stats.added_labels.size() << " element(s) after examining " << stats.nodes << " candidates\n";
  return kOk;
}

int cmd_nucleus(const Options& o, std::ostream& out, std::ostream& err) {
  const arcs::Family fam = load_family(o.in);
  std::vector<Vector> pts;
  for (const auto& c : arcs::contact_points(fam)) pts.push_back(c.point);
  if (pts.empty()) {
    err << "not extendable: no contact points\n";
    return kFailed;
  }
  const Subspace nuc = Subspace::from_vectors(fam.field(), fam.ambient_dim(), pts);
  if (nuc.dim() != fam.element_dim()) {
    err << "not extendable: contact points span dimension " << nuc.dim() << ", elements have dimension "
        << fam.element_dim() << '\n';
    return kFailed;
  }
  std::size_t label = 0;
  for (auto l : fam.labels()) label = std::max(label, l + 1);
  const arcs::Family ext = fam.with_element(nuc, label);
  const auto h = arcs::check_dual_hyperoval(ext);
  if (!h.holds()) {
    err << "not extendable: contact-point span does not complete a dual hyperoval\n";
    return kFailed;
  }
  write_file(o.out, arcs::family_to_text(ext), out);
  err << "nucleus of dimension " << nuc.dim() << " appended; " << ext.size() << " elements form a dual hyperoval\n";
  return kOk;
}

int cmd_deal(const Options& o, std::ostream& out, std::ostream& err) {
  const arcs::Family arc = as_arc(load_family(o.in), err);
  const auto bundle = sharing::deal(variant_of(o.scheme), arc, o.seed);
  fs::create_directories(o.out_dir);
  for (const auto& s : bundle.shares) {
    std::ostringstream os;
    sharing::write_share(os, bundle.params, s);
    write_file((fs::path(o.out_dir) / ("share_" + std::to_string(s.id) + ".txt")).string(), os.str(), out);
  }
  std::ostringstream pub;
  sharing::write_public(pub, bundle);
  write_file((fs::path(o.out_dir) / "public.txt").string(), pub.str(), out);
  if (o.emit_secret) write_file((fs::path(o.out_dir) / "secret.txt").string(), linalg::to_text(bundle.secret), out);
  out << "dealt " << bundle.shares.size() << " shares, threshold " << bundle.params.k << ", scheme " << o.scheme
      << '\n';
  return kOk;
}

int cmd_reconstruct(const Options& o, std::ostream& out, std::ostream& err) {
  auto pin = open_in(o.public_file);
  sharing::PublicFile pub;
  try {
    pub = sharing::read_public(pin);
  } catch (const std::exception& e) {
    throw InputError(o.public_file + ": " + e.what());
  }
  std::vector<sharing::Share> shares;
  for (const auto& path : o.share_files) {
    auto in = open_in(path);
    sharing::ShareFile sf = [&] {
      try {
        return sharing::read_share(in);
      } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
      }
    }();
    if (sf.q != pub.view.params.q || sf.n != pub.view.params.n ||
        static_cast<int>(sf.variant) != static_cast<int>(pub.view.params.variant)) {
      throw InputError(path + ": share does not belong to this scheme");
    }
    shares.push_back(std::move(sf.share));
  }
  try {
    const Subspace secret = sharing::reconstruct(pub.view, shares);
    write_file(o.out, linalg::to_text(secret), out);
    return kOk;
  } catch (const sharing::ReconstructionError& e) {
    err << "reconstruction failed: " << e.what() << '\n';
    return kFailed;
  }
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const arcs::Family arc = as_arc(load_family(o.in), err);
  const auto bundle = sharing::deal(variant_of(o.scheme), arc, o.seed);
  out << "scheme " << o.scheme << ", q=" << arc.q() << ", k=" << bundle.params.k << ", " << bundle.shares.size()
      << " shares, " << o.trials << " trials per row\n";
  return simulate_table(bundle, o.trials, o.seed, o.workers, out);
}

int cmd_cubic_demo(const Options& o, std::ostream& out, std::ostream& /*err*/) {
  const auto field = gf::make_field_of_order(o.q);
  const veronese::VeroneseContext ctx(field, 2, 2);
  const auto cs = sharing::twisted_cubic_secret(ctx);
  out << "element A([1,0,0]):\n" << linalg::to_text(cs.element);
  out << "intersection points with the elements of lines through [1,0,0]:\n";
  for (const auto& p : cs.points) {
    out << " ";
    for (auto v : p) out << ' ' << field->format(v);
    out << '\n';
  }
  out << "twisted cubic: " << (cs.twisted_cubic ? "yes" : "NO") << '\n';
  out << "secret plane avoiding all of them:\n" << linalg::to_text(cs.plane);
  out << "leak profile:";
  for (const auto& r : cs.leak_profile) out << ' ' << r;
  out << '\n';

  const auto bundle = sharing::deal_twisted_cubic(ctx, o.seed);
  const auto view = sharing::public_view(bundle);
  const std::span<const sharing::Share> first(bundle.shares.data(), static_cast<std::size_t>(bundle.params.k));
  const bool recon = sharing::reconstruct(view, first) == bundle.secret;
  out << "reconstruction from shares 1.." << bundle.params.k << ": " << (recon ? "ok" : "FAILED") << '\n';
  const int sim = simulate_table(bundle, o.trials, o.seed, o.workers, out);
  return cs.twisted_cubic && recon && sim == kOk ? kOk : kFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalised dual arcs over finite fields: construction, verification, extension, secret sharing"};
  app.name("dualarc");
  app.require_subcommand(1);
  Options o;

  auto add_field = [&](CLI::App* c) {
    c->add_option("--q", o.q, "field order (prime power)")->required();
  };

  auto* construct = app.add_subcommand("construct", "build the Veronesean dual arc (or arc) of PG(n,q), order d");
  add_field(construct);
  construct->add_option("--n", o.n, "source dimension n")->required();
  construct->add_option("--d", o.d, "order d")->required();
  construct->add_option("--out", o.out, "output family file (default stdout)");
  construct->add_flag("--arc", o.arc, "write the arc A(P) instead of the dual arc D(P)");

  auto* verify = app.add_subcommand("verify", "check the (dual) arc axioms and regularity of a family file");
  verify->add_option("--in", o.in, "family file")->required();
  verify->add_option("--delta", o.delta, "also check the order-1 completion hypotheses for this deficiency");
  verify->add_option("--mode", o.mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
  verify->add_option("--samples", o.samples, "subsets per size in sampled mode");
  verify->add_option("--seed", o.seed, "sampling seed");
  verify->add_flag("--text", o.text, "human-readable report instead of key=value lines");

  auto* dualize = app.add_subcommand("dualize", "replace every element by its perp");
  dualize->add_option("--in", o.in, "family file")->required();
  dualize->add_option("--out", o.out, "output family file (default stdout)");

  auto* extend = app.add_subcommand("extend", "complete an order-1 dual arc missing delta elements");
  extend->add_option("--in", o.in, "family file")->required();
  extend->add_option("--delta", o.delta, "number of missing elements")->required()->check(CLI::NonNegativeNumber);
  extend->add_option("--out", o.out, "output family file (default stdout)");
  extend->add_flag("--force", o.force, "search even if the completion hypotheses fail");

  auto* nucleus = app.add_subcommand("nucleus", "append the nucleus of an order-1 dual arc (q even)");
  nucleus->add_option("--in", o.in, "family file")->required();
  nucleus->add_option("--out", o.out, "output family file (default stdout)");

  auto* deal = app.add_subcommand("deal", "split a secret into share files");
  deal->add_option("--in", o.in, "arc or dual arc family file")->required();
  deal->add_option("--scheme", o.scheme, "1: hyperplane secret, 2: subspace secret")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  deal->add_option("--seed", o.seed, "dealer seed")->required();
  deal->add_option("--out-dir", o.out_dir, "directory for share_<id>.txt and public.txt")->required();
  deal->add_flag("--emit-secret", o.emit_secret, "also write secret.txt");

  auto* reconstruct = app.add_subcommand("reconstruct", "recover the secret from share files");
  reconstruct->add_option("--public", o.public_file, "public.txt written by deal")->required();
  reconstruct->add_option("shares", o.share_files, "share files")->required();
  reconstruct->add_option("--out", o.out, "output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo guessing attack against a dealt scheme");
  simulate->add_option("--in", o.in, "arc or dual arc family file")->required();
  simulate->add_option("--scheme", o.scheme, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  simulate->add_option("--seed", o.seed, "seed for dealing and trials")->required();
  simulate->add_option("--trials", o.trials, "trials per share count")->check(CLI::PositiveNumber);
  simulate->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);

  auto* cubic = app.add_subcommand("cubic-demo", "twisted-cubic secret plane inside one arc element (n=2, d=2)");
  add_field(cubic);
  cubic->add_option("--seed", o.seed, "seed for dealing and trials")->required();
  cubic->add_option("--trials", o.trials, "trials per share count")->check(CLI::PositiveNumber);
  cubic->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_store{"dualarc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct) return cmd_construct(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
    if (*dualize) return cmd_dualize(o, out, err);
    if (*extend) return cmd_extend(o, out, err);
    if (*nucleus) return cmd_nucleus(o, out, err);
    if (*deal) return cmd_deal(o, out, err);
    if (*reconstruct) return cmd_reconstruct(o, out, err);
    if (*simulate) return cmd_simulate(o, out, err);
    if (*cubic) return cmd_cubic_demo(o, out, err);
  } catch (const arcs::ExtensionError& e) {
    err << "not extendable: " << e.what() << '\n';
    return kFailed;
  } catch (const sharing::DealError& e) {
    err << "deal failed: " << e.what() << '\n';
    return kFailed;
  } catch (const arcs::AxiomViolation& e) {
    err << "inconsistent input: " << e.what() << '\n';
    return kInconsistent;
  } catch (const arcs::ClassificationError& e) {
    err << "inconsistent input: " << e.what() << '\n';
    return kInconsistent;
  } catch (const std::logic_error& e) {
    // invalid_argument, out_of_range and the library's dimension and field
    // errors derive from logic_error: they reflect bad parameters.
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInconsistent;
  }
  return kUsage;
}

}  // namespace dualarc::cli
