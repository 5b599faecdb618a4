#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <future>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tenrank/acceptance.hpp"
#include "tenrank/digest.hpp"
#include "tenrank/io.hpp"
#include "tenrank/scalar_io.hpp"
#include "tenrank/version.hpp"

namespace tenrank::cli {
namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

constexpr std::uint64_t kDefaultSeed = 0x5eed;

struct Context {
  std::vector<std::string> argv;
  bool deterministic = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

Json header(const Context& ctx) {
  Json j;
  j["format"] = kFormatVersion;
  j["version"] = std::string(library_version());
  j["command"] = ctx.argv;
  return j;
}

void emit(const Context& ctx, Json report) {
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - ctx.start).count();
  report["wall_time_ms"] = ctx.deterministic ? 0.0 : ms;
  *ctx.out << report.dump(2) << '\n';
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotADegeneration:
    case ErrorCode::UnverifiedDecomposition:
    case ErrorCode::CertificateSubjectMismatch:
    case ErrorCode::WeakCertificate:
    case ErrorCode::NotBlockPyramidal:
    case ErrorCode::NotMinimalRank:
    case ErrorCode::RearrangementFailed:
    case ErrorCode::InvalidEpsDecomposition:
      return kFail;
    default:
      return kUsage;
  }
}

Json error_json(const Error& e) { return Json{{"code", to_string(e.code())}, {"message", e.what()}}; }

Family family_of(const std::string& name) {
  auto f = parse_family(name);
  if (!f) throw Error(ErrorCode::BadSpec, "unknown family '" + name + "'");
  return *f;
}

struct FamilyOptions {
  std::string family;
  int d = 2;
  int n = 3;
  int l = 1;
  std::string alpha = "1";
  std::string beta = "1";
  int sign = 1;

  FamilySpec spec() const {
    FamilySpec s{family_of(family), d, n};
    s.l = l;
    s.alpha = Rational::parse(alpha);
    s.beta = Rational::parse(beta);
    s.sign = sign;
    return s;
  }
};

void add_shape_options(CLI::App* app, FamilyOptions& o) {
  app->add_option("--d", o.d, "local dimension")->check(CLI::Range(1, 64));
  app->add_option("--n", o.n, "number of factors")->check(CLI::Range(1, 16));
}

void add_family_options(CLI::App* app, FamilyOptions& o, bool required) {
  auto* f = app->add_option("--family", o.family, "ghz, w, dicke, l, m, mprime, n, nprime, y, nonsym4");
  if (required) f->required();
  add_shape_options(app, o);
  app->add_option("--l", o.l, "excitation count (dicke)");
  app->add_option("--alpha", o.alpha, "rational alpha (nonsym4)");
  app->add_option("--beta", o.beta, "rational beta (nonsym4)");
  app->add_option("--sign", o.sign, "+1 or -1 (nonsym4)")->check(CLI::IsMember({-1, 1}));
}

CycTensor load_tensor(const std::string& path) {
  Json doc = read_json_file(path);
  const Json& body = doc.contains("tensor") ? doc.at("tensor") : doc;
  return expect_kind<Cyclotomic>(tensor_from_json(body));
}

// Named family whose constructor reproduces t exactly, if any.
std::optional<FamilySpec> recognize_family(const CycTensor& t) {
  const Shape& s = t.shape();
  if (!s.is_uniform() || s.arity() < 2) return std::nullopt;
  const int d = s.dim(0), n = s.arity();
  std::vector<FamilySpec> candidates;
  for (Family f : {Family::GHZ, Family::W, Family::L, Family::M, Family::MPRIME, Family::N, Family::NPRIME}) candidates.push_back({f, d, n});
  if (d == 2)
    for (int l = 0; l <= n; ++l) {
      FamilySpec dk{Family::DICKE, 2, n};
      dk.l = l;
      candidates.push_back(dk);
    }
  for (const auto& c : candidates) {
    try {
      FamilySpec norm = c.normalized();
      if (norm.d != d || norm.n != n) continue;
      if (make_state(norm) == t) return norm;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TENRANK_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "TENRANK_SEED is not an unsigned integer");
    }
  }
  return kDefaultSeed;
}

CycVector parse_vector(const std::string& text) {
  CycVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_cyclotomic(item));
  if (v.empty()) throw Error(ErrorCode::ParseError, "empty candidate vector");
  return v;
}

// Runs fn over every input concurrently; each result is a JSON object with an
// optional "exit" hint that is folded into the overall code.
template <class F>
int run_batch(const std::vector<std::string>& files, F fn, Json& results) {
  std::vector<std::future<std::pair<int, Json>>> jobs;
  for (const auto& f : files)
    jobs.push_back(std::async(std::launch::async, [&fn, f] {
      try {
        return fn(f);
      } catch (const Error& e) {
        return std::pair<int, Json>{exit_code_for(e), Json{{"file", f}, {"error", error_json(e)}}};
      }
    }));
  int code = kOk;
  for (auto& j : jobs) {
    auto [c, body] = j.get();
    code = std::max(code, c);
    results.push_back(std::move(body));
  }
  return code;
}

// ---- subcommands ----------------------------------------------------------

int cmd_gen_state(const Context& ctx, const FamilyOptions& fo, const std::string& output) {
  FamilySpec spec = fo.spec();
  CycTensor t = make_state(spec);
  Json report = header(ctx);
  report["family"] = spec.normalized().str();
  report["subject"] = digest_hex(digest(t));
  report["entries"] = t.nnz();
  if (output.empty()) {
    report["tensor"] = to_json(t);
  } else {
    write_json_file(output, to_json(t));
    report["file"] = output;
  }
  emit(ctx, std::move(report));
  return kOk;
}

int cmd_rank_cert(const Context& ctx, const std::vector<std::string>& files, const std::string& cert_path, const std::string& decomp_path) {
  if (files.size() > 1 && (!cert_path.empty() || !decomp_path.empty()))
    throw Error(ErrorCode::BadSpec, "--cert/--decomp apply to a single tensor");
  Json results = Json::array();
  int code = run_batch(
      files,
      [&](const std::string& file) -> std::pair<int, Json> {
        CycTensor t = load_tensor(file);
        Json r{{"file", file}, {"subject", digest_hex(digest(t))}};
        RankCertificate rc;
        auto family = recognize_family(t);
        if (family && cert_path.empty() && decomp_path.empty()) {
          r["family"] = family->str();
          rc = family_rank_certificate(*family);
        } else {
          if (cert_path.empty() && decomp_path.empty())
            throw Error(ErrorCode::BadSpec, "unrecognized tensor: pass --cert and/or --decomp");
          if (!cert_path.empty()) {
            rc = persistent_lower_bound(t, persistence_certificate_from_json(read_json_file(cert_path)));
          } else {
            MultilinearProfile prof = multilinear_profile(t);
            rc.subject = digest(t);
            rc.lower = *std::max_element(prof.ranks.begin(), prof.ranks.end());
            rc.trace.push_back("lower bound " + std::to_string(rc.lower) + " from the largest mode flattening rank");
          }
          if (!decomp_path.empty()) rc = with_upper_bound(std::move(rc), t, decomposition_from_json<Cyclotomic>(read_json_file(decomp_path)));
        }
        r["rank"] = to_json(rc);
        return {kOk, std::move(r)};
      },
      results);
  Json report = header(ctx);
  report["results"] = std::move(results);
  emit(ctx, std::move(report));
  return code;
}

int cmd_verify_decomp(const Context& ctx, const std::string& tensor_path, const std::string& decomp_path) {
  CycTensor t = load_tensor(tensor_path);
  CycDecomposition dec = decomposition_from_json<Cyclotomic>(read_json_file(decomp_path));
  bool ok = verify_decomposition(t, dec);
  Json report = header(ctx);
  report["subject"] = digest_hex(digest(t));
  report["verified"] = ok;
  report["terms"] = dec.size();
  if (ok) report["rank_upper_bound"] = dec.size();
  emit(ctx, std::move(report));
  return ok ? kOk : kFail;
}

int cmd_persist(const Context& ctx, const std::vector<std::string>& files, const std::string& method, int trials, std::optional<std::uint64_t> seed_flag,
                const std::vector<std::string>& candidate_text) {
  const std::uint64_t seed = resolve_seed(seed_flag);
  std::vector<CycVector> candidates;
  for (const auto& c : candidate_text) candidates.push_back(parse_vector(c));
  Json results = Json::array();
  int code = run_batch(
      files,
      [&](const std::string& file) -> std::pair<int, Json> {
        CycTensor t = load_tensor(file);
        Json r{{"file", file}, {"subject", digest_hex(digest(t))}};
        const auto& dims = t.shape().dims();
        const bool qubits = std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; }) && t.arity() >= 2 && t.arity() <= 4;
        std::string why;
        if (method == "screen") {
          ScreenResult s = screen_persistence(t, trials, seed);
          r["method"] = "screen";
          r["seed"] = seed;
          r["persistent"] = nullptr;
          r["screening"] = to_json(s);
          return {kOk, std::move(r)};
        }
        if (method == "pyramid" || method == "auto") {
          if (auto cert = pyramid_persistence(t, &why)) {
            r["method"] = "pyramid";
            r["persistent"] = true;
            r["certificate"] = to_json(*cert);
            return {kOk, std::move(r)};
          }
          r["pyramid"] = "not applicable: " + why;
          if (method == "pyramid") {
            r["persistent"] = nullptr;
            return {kOk, std::move(r)};
          }
        }
        if (qubits) {
          QubitDecision dec = decide_persistence_qubits(t, candidates);
          r["method"] = "qubit";
          r["persistent"] = dec.persistent;
          r["decision"] = to_json(dec);
          return {kOk, std::move(r)};
        }
        if (method == "qubit") throw Error(ErrorCode::BadDim, "exact qubit decision needs all dims 2 and arity 2..4");
        r["method"] = "none";
        r["persistent"] = nullptr;
        r["note"] = "no exact method applies; rerun with --method screen for a heuristic";
        return {kOk, std::move(r)};
      },
      results);
  Json report = header(ctx);
  report["results"] = std::move(results);
  emit(ctx, std::move(report));
  return code;
}

int cmd_degen(const Context& ctx, const std::string& source, const std::string& target, const FamilyOptions& fo, const std::string& src_path,
              const std::string& maps_path, const std::string& tgt_path, const std::string& emit_maps) {
  CycTensor src, tgt;
  EpsLocalMap maps;
  Json report = header(ctx);
  if (!src_path.empty() || !maps_path.empty() || !tgt_path.empty()) {
    if (src_path.empty() || maps_path.empty() || tgt_path.empty()) throw Error(ErrorCode::BadSpec, "--src, --maps and --tgt go together");
    src = load_tensor(src_path);
    tgt = load_tensor(tgt_path);
    maps = local_map_from_json<EpsLaurent>(read_json_file(maps_path));
  } else {
    if (source.empty() || target.empty()) throw Error(ErrorCode::BadSpec, "pass --source/--target families or --src/--maps/--tgt files");
    Family s = family_of(source), g = family_of(target);
    src = make_state({s, fo.d, fo.n});
    tgt = make_state({g, fo.d, fo.n});
    maps = canonical_rate_maps(s, g, fo.d, fo.n);
    report["source"] = FamilySpec{s, fo.d, fo.n}.str();
    report["target"] = FamilySpec{g, fo.d, fo.n}.str();
  }
  if (!emit_maps.empty()) write_json_file(emit_maps, to_json(maps));
  try {
    report["degeneration"] = to_json(verify_degeneration(src, maps, tgt));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotADegeneration) throw;
    report["degeneration"] = Json{{"verified", false}, {"error", error_json(e)}};
    emit(ctx, std::move(report));
    return kFail;
  }
  emit(ctx, std::move(report));
  return kOk;
}

EpsDecomposition family_eps_decomposition(const FamilySpec& spec, std::string& route) {
  const int d = spec.d, n = spec.n;
  switch (spec.family) {
    case Family::L:
    case Family::Y:
      route = "direct";
      return eps_decomposition(Family::L, d, n);
    case Family::W:
      route = "W = L(2,n)";
      return eps_decomposition(Family::L, 2, n);
    case Family::NPRIME:
      route = "direct";
      return eps_decomposition(Family::NPRIME, d, n);
    case Family::MPRIME:
      if (d >= 3) {
        route = "direct";
        return eps_decomposition(Family::MPRIME, d, n);
      }
      route = "M'(2,n) = L(2,n)";
      return eps_decomposition(Family::L, d, n);
    case Family::M:
      route = "L eps-decomposition through the L -> M maps";
      return map_decomposition(canonical_chain_maps(ChainStep::L_TO_M, d, n), eps_decomposition(Family::L, d, n));
    case Family::N:
      route = "L eps-decomposition through the composed L -> M -> N maps";
      return map_decomposition(compose(canonical_chain_maps(ChainStep::M_TO_N, d, n), canonical_chain_maps(ChainStep::L_TO_M, d, n)),
                               eps_decomposition(Family::L, d, n));
    case Family::GHZ:
      route = "exact decomposition read as eps-free";
      return to_eps(decompose_trivial(Family::GHZ, d, n));
    default:
      throw Error(ErrorCode::BadSpec, "no border certificate route for " + spec.str());
  }
}

int cmd_border(const Context& ctx, const FamilyOptions& fo, const std::string& tensor_path, const std::string& eps_path) {
  Json report = header(ctx);
  CycTensor t;
  EpsDecomposition dec;
  if (!tensor_path.empty() || !eps_path.empty()) {
    if (tensor_path.empty() || eps_path.empty()) throw Error(ErrorCode::BadSpec, "--tensor and --eps-decomp go together");
    t = load_tensor(tensor_path);
    dec = decomposition_from_json<EpsLaurent>(read_json_file(eps_path));
  } else {
    if (fo.family.empty()) throw Error(ErrorCode::BadSpec, "pass --family or --tensor/--eps-decomp");
    FamilySpec spec = fo.spec().normalized();
    std::string route;
    dec = family_eps_decomposition(spec, route);
    t = make_state(spec);
    report["family"] = spec.str();
    report["route"] = route;
  }
  report["border"] = to_json(border_rank_certificate(t, dec));
  emit(ctx, std::move(report));
  return kOk;
}

int cmd_rate(const Context& ctx, const std::string& source, const std::string& target, const FamilyOptions& fo, const std::string& maps_path) {
  Family s = family_of(source), g = family_of(target);
  CycTensor src = make_state({s, fo.d, fo.n}), tgt = make_state({g, fo.d, fo.n});
  EpsLocalMap maps = maps_path.empty() ? canonical_rate_maps(s, g, fo.d, fo.n) : local_map_from_json<EpsLaurent>(read_json_file(maps_path));
  RateCertificate rc = rate_one_certificate(src, tgt, maps);
  Json report = header(ctx);
  report["source"] = FamilySpec{s, fo.d, fo.n}.normalized().str();
  report["target"] = FamilySpec{g, fo.d, fo.n}.normalized().str();
  report["rate"] = to_json(rc);
  emit(ctx, std::move(report));
  return rc.rate_one ? kOk : kFail;
}

int cmd_kron_cert(const Context& ctx, const FamilyOptions& fo, int ghz_d, const std::string& mode) {
  FamilySpec spec = fo.spec().normalized();
  CycTensor p = make_state(spec);
  auto cert = certify_family_persistence(spec);
  if (!cert) throw Error(ErrorCode::NotMinimalRank, spec.str() + " has no persistence certificate");
  CycDecomposition dec = decompose_family(spec);
  RankCertificate pr = with_upper_bound(persistent_lower_bound(p, *cert), p, dec);
  RankCertificate rc = ghz_kron_cert(p, pr, *cert, dec, ghz_d, mode == "tensor" ? GhzProductMode::Tensor : GhzProductMode::Kron);
  Json report = header(ctx);
  report["p"] = spec.str();
  report["ghz_d"] = ghz_d;
  report["mode"] = mode;
  report["p_rank"] = to_json(pr);
  report["rank"] = to_json(rc);
  emit(ctx, std::move(report));
  return kOk;
}

int cmd_selftest(const Context& ctx, const std::vector<int>& only, bool json) {
  auto results = run_acceptance(only);
  bool all = std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
  if (json) {
    Json report = header(ctx);
    Json list = Json::array();
    for (const auto& r : results) list.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"log", r.log}});
    report["criteria"] = std::move(list);
    report["pass"] = all;
    emit(ctx, std::move(report));
  } else {
    for (const auto& r : results) {
      *ctx.out << format_result(r) << '\n';
      for (const auto& line : r.log) *ctx.out << "    " << line << '\n';
    }
  }
  return all ? kOk : kFail;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  for (int i = 0; i < argc; ++i) ctx.argv.emplace_back(argv[i]);

  CLI::App app{"Exact tensor rank, border rank and degeneration certificates", "tenrank"};
  app.require_subcommand(1);
  app.add_flag("--deterministic", ctx.deterministic, "report wall_time_ms as 0 so output is byte-stable");
  app.set_version_flag("--version", std::string(library_version()));

  FamilyOptions fo;
  std::string output, cert_path, decomp_path, tensor_path, eps_path, method = "auto", source, target, src_path, maps_path, tgt_path, emit_maps,
                      mode = "kron";
  std::vector<std::string> files, candidates;
  std::string decomp_positional;
  int trials = 20, ghz_d = 2;
  std::optional<std::uint64_t> seed;
  std::vector<int> only;
  bool json = false;

  auto* gen = app.add_subcommand("gen-state", "write a named family tensor");
  add_family_options(gen, fo, true);
  gen->add_option("-o,--output", output, "output file (default: embed in the report)");

  auto* rank = app.add_subcommand("rank-cert", "rank lower/upper bound certificate");
  rank->add_option("tensors", files, "tensor JSON files (run concurrently)")->required()->check(CLI::ExistingFile);
  rank->add_option("--cert", cert_path, "persistence certificate JSON")->check(CLI::ExistingFile);
  rank->add_option("--decomp", decomp_path, "decomposition JSON")->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify-decomp", "check a decomposition exactly");
  verify->add_option("tensor", tensor_path, "tensor JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("decomposition", decomp_positional, "decomposition JSON")->required()->check(CLI::ExistingFile);

  auto* persist = app.add_subcommand("persist", "persistence certificate, exact decision or screening");
  persist->add_option("tensors", files, "tensor JSON files (run concurrently)")->required()->check(CLI::ExistingFile);
  persist->add_option("--method", method, "auto, pyramid, qubit or screen")->check(CLI::IsMember({"auto", "pyramid", "qubit", "screen"}));
  persist->add_option("--trials", trials, "screening samples at the top level")->check(CLI::Range(1, 100000));
  persist->add_option("--seed", seed, "screening seed (default: TENRANK_SEED, then a fixed value)");
  persist->add_option("--candidate", candidates, "extra qubit witness, e.g. 0,1 (repeatable)");

  auto* degen = app.add_subcommand("degen", "verify a degeneration");
  degen->add_option("--source", source, "source family");
  degen->add_option("--target", target, "target family");
  add_shape_options(degen, fo);
  degen->add_option("--src", src_path, "source tensor JSON")->check(CLI::ExistingFile);
  degen->add_option("--maps", maps_path, "eps local map JSON")->check(CLI::ExistingFile);
  degen->add_option("--tgt", tgt_path, "target tensor JSON")->check(CLI::ExistingFile);
  degen->add_option("--emit-maps", emit_maps, "write the maps used to this file");

  auto* border = app.add_subcommand("border", "border rank certificate");
  add_family_options(border, fo, false);
  border->add_option("--tensor", tensor_path, "tensor JSON")->check(CLI::ExistingFile);
  border->add_option("--eps-decomp", eps_path, "eps decomposition JSON")->check(CLI::ExistingFile);

  auto* rate = app.add_subcommand("rate", "rate-one certificate between two families");
  rate->add_option("--source", source, "source family")->required();
  rate->add_option("--target", target, "target family")->required();
  add_shape_options(rate, fo);
  rate->add_option("--maps", maps_path, "eps local map JSON (default: canonical chain)")->check(CLI::ExistingFile);

  auto* kron = app.add_subcommand("kron-cert", "rank of GHZ(d,n) kron/tensor P for a minimal-rank persistent family P");
  add_family_options(kron, fo, true);
  kron->add_option("--ghz-d", ghz_d, "GHZ local dimension")->check(CLI::Range(1, 16));
  kron->add_option("--mode", mode, "kron or tensor")->check(CLI::IsMember({"kron", "tensor"}));

  auto* self = app.add_subcommand("selftest", "run the acceptance corpus");
  self->add_option("--only", only, "criterion ids")->delimiter(',');
  self->add_flag("--json", json, "JSON report instead of text lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen_state(ctx, fo, output);
    if (*rank) return cmd_rank_cert(ctx, files, cert_path, decomp_path);
    if (*verify) return cmd_verify_decomp(ctx, tensor_path, decomp_positional);
    if (*persist) return cmd_persist(ctx, files, method, trials, seed, candidates);
    if (*degen) return cmd_degen(ctx, source, target, fo, src_path, maps_path, tgt_path, emit_maps);
    if (*border) return cmd_border(ctx, fo, tensor_path, eps_path);
    if (*rate) return cmd_rate(ctx, source, target, fo, maps_path);
    if (*kron) return cmd_kron_cert(ctx, fo, ghz_d, mode);
    if (*self) return cmd_selftest(ctx, only, json);
  } catch (const Error& e) {
    err << "tenrank: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "tenrank: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace tenrank::cli
