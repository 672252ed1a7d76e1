// abe: command-line front end for the KP-ABE library.
//
// Exit codes: 0 ok, 1 check failed / other error, 2 usage or parse error,
// 3 I/O failure, 4 circuit not satisfied.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mlabe/circuit.hpp"
#include "mlabe/kpabe_io.hpp"
#include "mlabe/reduction.hpp"
#include "mlabe/tracking.hpp"

namespace fs = std::filesystem;
using namespace mlabe;
using namespace mlabe::kpabe;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNotSatisfied = 4;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("error writing " + path.string());
}

Rng make_rng(const std::optional<std::uint64_t>& seed) { return seed ? Rng(*seed) : Rng::from_entropy(); }

struct BoundOptions {
  bool track = false;
  int size_bits = 32;
};

// Runs `body` on a bounded backend and prints the per-level utilization.
template <class F>
auto with_bounds(const GroupDescriptor& gd, const BoundOptions& opts, F&& body) {
  BudgetMeter meter;
  const BoundedBackend backend(gd, GrowthProfile::standard(opts.size_bits), &meter);
  auto out = body(backend);
  std::cerr << "bound utilization (size exponent " << opts.size_bits << "):\n" << utilization_report(meter);
  return out;
}

void add_bound_flags(CLI::App* cmd, BoundOptions& opts) {
  cmd->add_flag("--track-bounds", opts.track, "Route through the size-bound backend and report budget use")
      ->envname("ABE_TRACK_BOUNDS");
  cmd->add_option("--bound-bits", opts.size_bits, "Size exponent of fresh values for --track-bounds")
      ->check(CLI::Range(1, 4096));
}

// ---- setup / keygen / encrypt / decrypt ----

struct SetupArgs {
  int n = 0;
  int depth = 0;
  unsigned bits = kDefaultSecurityBits;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  BoundOptions bounds;
};

int cmd_setup(const SetupArgs& a) {
  if (a.n < 1) throw InvalidArgument("--n must be at least 1");
  if (a.depth < 1) throw InvalidArgument("--depth must be at least 1");
  Rng rng = make_rng(a.seed);
  const auto gd = GroupDescriptor::generate(a.bits, a.depth + 1, rng);
  std::string pp, msk;
  if (a.bounds.track) {
    auto keys = with_bounds(gd, a.bounds, [&](const BoundedBackend& b) { return setup(b, a.n, a.depth, rng); });
    pp = to_text(untrack(keys.pp));
    msk = to_text(untrack(keys.msk));
  } else {
    const auto keys = setup(ReferenceBackend(gd), a.n, a.depth, rng);
    pp = to_text(keys.pp);
    msk = to_text(keys.msk);
  }
  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "pp.txt", pp);
  write_file(dir / "msk.txt", msk);
  return 0;
}

struct KeygenArgs {
  std::string dir = ".";
  std::string circuit;
  bool pad = false;
  std::string label;
  std::optional<std::uint64_t> seed;
  BoundOptions bounds;
};

int cmd_keygen(const KeygenArgs& a) {
  const auto pp = public_params_from_text(read_file(fs::path(a.dir) / "pp.txt"));
  const auto msk = master_secret_from_text(read_file(fs::path(a.dir) / "msk.txt"));
  if (msk.group != pp.group) throw InvalidArgument("pp.txt and msk.txt belong to different groups");
  Circuit f = parse_circuit(read_file(a.circuit));
  if (a.pad) f = layer_and_pad(f, pp.depth);
  Rng rng = make_rng(a.seed);
  const RefSecretKey sk = a.bounds.track ? with_bounds(pp.group, a.bounds, [&](const BoundedBackend& b) {
    return untrack(keygen(b, track(b, msk), track(b, pp), f, rng));
  }) : keygen(ReferenceBackend(pp.group), msk, pp, f, rng);
  write_file(fs::path(a.dir) / ("sk-" + a.label + ".txt"), to_text(sk));
  return 0;
}

struct EncryptArgs {
  std::string dir = ".";
  std::string input;
  int message = 1;
  std::string label;
  std::optional<std::uint64_t> seed;
  BoundOptions bounds;
};

int cmd_encrypt(const EncryptArgs& a) {
  const auto pp = public_params_from_text(read_file(fs::path(a.dir) / "pp.txt"));
  const Assignment x = parse_assignment(a.input);
  Rng rng = make_rng(a.seed);
  const RefCiphertext ct = a.bounds.track ? with_bounds(pp.group, a.bounds, [&](const BoundedBackend& b) {
    return untrack(encrypt(b, track(b, pp), x, a.message == 1, rng));
  }) : encrypt(ReferenceBackend(pp.group), pp, x, a.message == 1, rng);
  write_file(fs::path(a.dir) / ("ct-" + a.label + ".txt"), to_text(ct));
  return 0;
}

struct DecryptArgs {
  std::string dir = ".";
  std::string key;
  std::string ct;
  BoundOptions bounds;
};

int cmd_decrypt(const DecryptArgs& a) {
  const auto sk = secret_key_from_text(read_file(fs::path(a.dir) / ("sk-" + a.key + ".txt")));
  const auto ct = ciphertext_from_text(read_file(fs::path(a.dir) / ("ct-" + a.ct + ".txt")));
  if (sk.group != ct.group) throw InvalidArgument("key and ciphertext belong to different groups");
  if (!evaluate(sk.f, ct.x).output) {
    std::cout << "NOT-SATISFIED\n";
    return kExitNotSatisfied;
  }
  bool bit;
  if (a.bounds.track) {
    bit = with_bounds(sk.group, a.bounds, [&](const BoundedBackend& b) {
      return decrypt(b, track(b, sk), track(b, ct));
    });
  } else {
    bit = decrypt(ReferenceBackend(sk.group), sk, ct);
  }
  std::cout << (bit ? 1 : 0) << "\n";
  return 0;
}

// ---- circuit tooling ----

void print_violations(const std::vector<Violation>& vs) {
  for (const Violation& v : vs)
    std::cout << "wire " << v.wire << ": [" << rule_name(v.rule) << "] " << v.message << "\n";
}

int cmd_circuit_check(const std::string& path) {
  const auto parsed = parse(read_file(path));
  std::vector<Violation> vs;
  int d = 0;
  std::visit([&](const auto& c) {
    vs = validate(c);
    if (vs.empty()) d = depth(c);
  }, parsed);
  if (!vs.empty()) {
    print_violations(vs);
    return kExitFailed;
  }
  const bool monotone = std::holds_alternative<Circuit>(parsed);
  std::cout << "ok: " << (monotone ? "layered monotone" : "extended") << " circuit, depth " << d << "\n";
  return 0;
}

int cmd_circuit_demorgan(const std::string& path, const std::string& out) {
  const ExtendedCircuit c = parse_extended(read_file(path));
  if (const auto vs = validate(c); !vs.empty()) {
    print_violations(vs);
    return kExitFailed;
  }
  const Monotonized m = demorganize(c);
  const int n = m.original_inputs;
  std::string convention = "# inputs 1.." + std::to_string(n) + " are x_1..x_" + std::to_string(n) +
                           ", inputs " + std::to_string(n + 1) + ".." + std::to_string(2 * n) +
                           " are NOT x_1..NOT x_" + std::to_string(n) + "\n";
  if (out.empty()) {
    std::cout << convention << render(m.circuit);
  } else {
    write_file(out, render(m.circuit));
    std::cout << convention;
  }
  return 0;
}

int cmd_circuit_layer(const std::string& path, int target, const std::string& out) {
  const Circuit c = parse_circuit(read_file(path));
  const std::string text = render(layer_and_pad(c, target));
  if (out.empty()) std::cout << text;
  else write_file(out, text);
  return 0;
}

int cmd_circuit_eval(const std::string& path, const std::string& bits) {
  const auto parsed = parse(read_file(path));
  const Assignment x = parse_assignment(bits);
  const Evaluation e = std::visit([&](const auto& c) { return evaluate(c, x); }, parsed);
  std::cout << "f(x)=" << (e.output ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < e.wires.size(); ++i) std::cout << "w" << i + 1 << "=" << (e.wires[i] ? 1 : 0) << "\n";
  return 0;
}

// ---- game demo ----

struct GameArgs {
  int n = 2;
  int depth = 2;
  unsigned bits = 64;
  std::optional<std::uint64_t> seed;
};

// OR(x_1, x_n) carried up to the top layer. Every monotone circuit rejects
// the all-zero input, so it is always a legal query for x* = 0^n.
Circuit demo_query(int n, int depth) {
  return layer_and_pad(Circuit(n, {Gate{GateType::Or, 1, n}}), depth);
}

// Plays one game with an adversary that knows the instance witness and
// checks C_M against g_k^{alpha s} directly.
int play_demo_game(const GameArgs& a, bool real, Rng& rng) {
  const int k = a.depth + 1;
  const auto gd = GroupDescriptor::generate(a.bits, k, rng);
  const auto inst = reduction::gen_instance(gd, real, rng);
  const ReferenceBackend backend(gd);
  const Assignment x_star(static_cast<std::size_t>(a.n), false);

  const auto adversary = [&](const reduction::PublicParams& pp, const reduction::Ciphertext& ct,
                             const reduction::KeygenOracle& oracle) {
    oracle(demo_query(a.n, a.depth));
    const auto target = backend.pow(pp.H, inst.witness.s);
    return backend.equal(target, ct.C_M);
  };

  reduction::GameTranscript tr;
  const bool guess = reduction::run_game(inst.challenge, x_star, adversary, rng, &tr);
  std::cout << "== game with " << (real ? "real" : "random") << " T ==\n";
  std::cout << "challenge input x* = " << to_string(x_star) << "\n";
  std::cout << "-- public parameters\n" << to_text(*tr.pp);
  std::cout << "-- challenge ciphertext\n" << to_text(*tr.challenge);
  for (std::size_t i = 0; i < tr.queries.size(); ++i)
    std::cout << "-- key query " << i + 1 << "\n" << render(tr.queries[i]);
  std::cout << "adversary output M' = " << (tr.message_guess ? 1 : 0) << "\n";
  std::cout << "guess: " << (guess ? "real" : "random") << "\n\n";
  return 0;
}

int cmd_game_demo(const GameArgs& a) {
  if (a.n < 1) throw InvalidArgument("--n must be at least 1");
  if (a.depth < 1) throw InvalidArgument("--depth must be at least 1");
  Rng rng = make_rng(a.seed);
  play_demo_game(a, true, rng);
  play_demo_game(a, false, rng);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Key-policy attribute-based encryption for layered monotone circuits"};
  app.require_subcommand(1);
  int rc = 0;

  SetupArgs setup_args;
  auto* setup_cmd = app.add_subcommand("setup", "Generate pp.txt and msk.txt");
  setup_cmd->add_option("--n", setup_args.n, "Number of input attributes")->required();
  setup_cmd->add_option("--depth", setup_args.depth, "Circuit depth l (group degree l+1)")->required();
  setup_cmd->add_option("--bits", setup_args.bits, "Prime size in bits")->capture_default_str();
  setup_cmd->add_option("--seed", setup_args.seed, "Seed for deterministic output");
  setup_cmd->add_option("--out-dir", setup_args.out_dir, "Key store directory")->capture_default_str();
  add_bound_flags(setup_cmd, setup_args.bounds);
  setup_cmd->callback([&] { rc = cmd_setup(setup_args); });

  KeygenArgs keygen_args;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate sk-<label>.txt for a circuit");
  keygen_cmd->add_option("--dir", keygen_args.dir, "Key store directory")->capture_default_str();
  keygen_cmd->add_option("--circuit", keygen_args.circuit, "Circuit file (.circ)")->required();
  keygen_cmd->add_flag("--pad", keygen_args.pad, "Layer and pad the circuit to the setup depth");
  keygen_cmd->add_option("--label", keygen_args.label, "Key label")->required();
  keygen_cmd->add_option("--seed", keygen_args.seed, "Seed for deterministic output");
  add_bound_flags(keygen_cmd, keygen_args.bounds);
  keygen_cmd->callback([&] { rc = cmd_keygen(keygen_args); });

  EncryptArgs encrypt_args;
  auto* encrypt_cmd = app.add_subcommand("encrypt", "Generate ct-<label>.txt");
  encrypt_cmd->add_option("--dir", encrypt_args.dir, "Key store directory")->capture_default_str();
  encrypt_cmd->add_option("--input", encrypt_args.input, "Attribute bit string x")->required();
  encrypt_cmd->add_option("--message", encrypt_args.message, "Message bit")->required()->check(CLI::IsMember({0, 1}));
  encrypt_cmd->add_option("--label", encrypt_args.label, "Ciphertext label")->required();
  encrypt_cmd->add_option("--seed", encrypt_args.seed, "Seed for deterministic output");
  add_bound_flags(encrypt_cmd, encrypt_args.bounds);
  encrypt_cmd->callback([&] { rc = cmd_encrypt(encrypt_args); });

  DecryptArgs decrypt_args;
  auto* decrypt_cmd = app.add_subcommand("decrypt", "Decrypt ct-<ct>.txt with sk-<key>.txt");
  decrypt_cmd->add_option("--dir", decrypt_args.dir, "Key store directory")->capture_default_str();
  decrypt_cmd->add_option("--key", decrypt_args.key, "Key label")->required();
  decrypt_cmd->add_option("--ct", decrypt_args.ct, "Ciphertext label")->required();
  add_bound_flags(decrypt_cmd, decrypt_args.bounds);
  decrypt_cmd->callback([&] { rc = cmd_decrypt(decrypt_args); });

  auto* circuit_cmd = app.add_subcommand("circuit", "Circuit tools");
  circuit_cmd->require_subcommand(1);
  std::string circ_path, out_path, bits;
  int target = 0;
  auto* check_cmd = circuit_cmd->add_subcommand("check", "Validate a circuit file");
  check_cmd->add_option("file", circ_path)->required();
  check_cmd->callback([&] { rc = cmd_circuit_check(circ_path); });
  auto* demorgan_cmd = circuit_cmd->add_subcommand("demorgan", "Remove NOT gates (2n literal inputs)");
  demorgan_cmd->add_option("file", circ_path)->required();
  demorgan_cmd->add_option("--out", out_path, "Write the circuit here instead of stdout");
  demorgan_cmd->callback([&] { rc = cmd_circuit_demorgan(circ_path, out_path); });
  auto* layer_cmd = circuit_cmd->add_subcommand("layer", "Layer and pad to a target depth");
  layer_cmd->add_option("file", circ_path)->required();
  layer_cmd->add_option("--depth", target, "Target depth")->required();
  layer_cmd->add_option("--out", out_path, "Write the circuit here instead of stdout");
  layer_cmd->callback([&] { rc = cmd_circuit_layer(circ_path, target, out_path); });
  auto* eval_cmd = circuit_cmd->add_subcommand("eval", "Evaluate on an input bit string");
  eval_cmd->add_option("file", circ_path)->required();
  eval_cmd->add_option("input", bits)->required();
  eval_cmd->callback([&] { rc = cmd_circuit_eval(circ_path, bits); });

  auto* game_cmd = app.add_subcommand("game", "Security game tools");
  game_cmd->require_subcommand(1);
  GameArgs game_args;
  auto* demo_cmd = game_cmd->add_subcommand("demo", "Run the reduction once with real T and once with random T");
  demo_cmd->add_option("--n", game_args.n)->capture_default_str();
  demo_cmd->add_option("--depth", game_args.depth)->capture_default_str();
  demo_cmd->add_option("--bits", game_args.bits)->capture_default_str();
  demo_cmd->add_option("--seed", game_args.seed);
  demo_cmd->callback([&] { rc = cmd_game_demo(game_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error at line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NotSatisfied& e) {
    std::cout << "NOT-SATISFIED\n";
    return kExitNotSatisfied;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return rc;
}
