// cnmzk: parameters, keys, the public file, networked sessions, attacks and extraction.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cnmzk/extractor.hpp"
#include "cnmzk/scenarios.hpp"
#include "cnmzk/session.hpp"
#include "json.hpp"
#include "net.hpp"

using namespace cnmzk;
using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text << "\n";
  } else {
    write_file(out, text + "\n");
  }
}

algebra::PairingBackend::Kind parse_backend(const std::string& s) {
  if (s == "transparent") return algebra::PairingBackend::Kind::kTransparent;
  if (s == "schnorr") return algebra::PairingBackend::Kind::kSchnorr;
  throw Error("unknown backend: " + s);
}

ordered_json params_json(const algebra::SchnorrGroupParams& p) {
  return {{"p", p.p.get_str()}, {"q", p.q.get_str()}, {"g", p.g.get_str()}};
}

algebra::SchnorrGroupParams params_from(const nlohmann::json& j) {
  algebra::SchnorrGroupParams p{mpz_class(j.at("p").get<std::string>()), mpz_class(j.at("q").get<std::string>()),
                                mpz_class(j.at("g").get<std::string>())};
  p.validate();
  return p;
}

algebra::SchnorrGroupParams load_params(const std::string& path) {
  return path.empty() ? algebra::test_params() : params_from(nlohmann::json::parse(read_file(path)));
}

struct KeyFile {
  algebra::Suite suite;
  protocol::VerifierKeys keys;
};

KeyFile load_key(const std::string& path) {
  const auto j = nlohmann::json::parse(read_file(path));
  KeyFile k;
  k.suite = algebra::Suite::make(params_from(j.at("params")), parse_backend(j.at("backend")));
  auto [vk0, vk1] = protocol::keys_from_json(k.suite, j.at("keys").dump());
  k.keys.vk0 = vk0;
  k.keys.vk1 = vk1;
  k.keys.bit = j.at("bit").get<int>();
  const auto& q = k.suite.order_ptr();
  sig::BBSigKey sk{algebra::Scalar(q, mpz_class(j.at("sk").at("x").get<std::string>())),
                   algebra::Scalar(q, mpz_class(j.at("sk").at("y").get<std::string>()))};
  (k.keys.bit == 0 ? k.keys.sk0 : k.keys.sk1) = sk;
  if (!sig::bb_key_matches(k.keys.bit == 0 ? k.keys.vk0 : k.keys.vk1, sk)) throw Error("signing key does not match");
  return k;
}

std::shared_ptr<const protocol::PublicFile> load_public_file(const std::string& path) {
  auto file = std::make_shared<protocol::PublicFile>(protocol::PublicFile::from_json(read_file(path)));
  if (!file->frozen()) throw Error("the public file must be frozen before the proof stage");
  return file;
}

struct Common {
  std::string mode = "pedersen";
  std::string backend = "schnorr";
  std::string owf = "hash";
  std::uint64_t seed = 1;
};

void add_common(CLI::App* app, Common& c, bool with_backend = true) {
  app->add_option("--mode", c.mode, "Commitment mode")->check(CLI::IsMember({"pedersen", "elgamal"}));
  if (with_backend) {
    app->add_option("--backend", c.backend, "Pairing backend")->check(CLI::IsMember({"transparent", "schnorr"}));
  }
  app->add_option("--owf", c.owf, "One-way function under the one-time signature")->check(CLI::IsMember({"hash", "exp"}));
  app->add_option("--seed", c.seed, "Random seed");
}

void write_log(const std::string& path, const std::vector<harness::LogRecord>& log) {
  if (!path.empty()) write_file(path, harness::to_jsonl(log));
}

harness::AttackConfig attack_config(const Common& c, bool bpk, const std::string& params_path) {
  harness::AttackConfig cfg;
  cfg.params = load_params(params_path);
  cfg.backend = parse_backend(c.backend);
  cfg.mode = commit::parse_commit_mode(c.mode);
  cfg.owf = c.owf;
  cfg.apk = !bpk;
  cfg.seed = c.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-knowledge argument sessions, man-in-the-middle scenarios and witness extraction"};
  app.require_subcommand(1);
  std::string out;

  // params
  auto* params = app.add_subcommand("params", "Generate or print safe-prime group parameters");
  unsigned bits = 4;
  std::uint64_t params_seed = 1;
  bool search = false;
  params->add_option("--bits", bits, "Bit length of q");
  params->add_option("--seed", params_seed, "Search seed");
  params->add_flag("--search", search, "Ignore the pinned table");
  params->add_option("--out", out, "Output file");

  // keygen
  auto* keygen = app.add_subcommand("keygen", "Generate a verifier key pair (two Boneh-Boyen keys, one kept)");
  std::string params_path;
  Common kc;
  keygen->add_option("--params", params_path, "Parameter file (default: p=23, q=11, g=2)");
  keygen->add_option("--backend", kc.backend, "Pairing backend")->check(CLI::IsMember({"transparent", "schnorr"}));
  keygen->add_option("--seed", kc.seed, "Random seed");
  keygen->add_option("--out", out, "Output key file");

  // register / freeze
  auto* reg = app.add_subcommand("register", "Append a verifier's public key to the public file");
  std::string file_path, key_path, owner_id = "V";
  reg->add_option("--file", file_path, "Public file")->required();
  reg->add_option("--key", key_path, "Key file")->required()->check(CLI::ExistingFile);
  reg->add_option("--owner-id", owner_id, "Label stored with the record");
  auto* freeze = app.add_subcommand("freeze", "Close the registration stage");
  freeze->add_option("--file", file_path, "Public file")->required()->check(CLI::ExistingFile);

  // verify / prove over TCP
  auto* verify = app.add_subcommand("verify", "Run the verifier as a TCP server");
  Common vc;
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::size_t sessions = 1;
  std::string port_file, log_path;
  std::size_t index = 1;
  verify->add_option("--file", file_path, "Frozen public file")->required()->check(CLI::ExistingFile);
  verify->add_option("--key", key_path, "Key file")->required()->check(CLI::ExistingFile);
  verify->add_option("--index", index, "Index of the key in the public file");
  verify->add_option("--host", host, "Listen address");
  verify->add_option("--port", port, "Listen port (0 picks one)");
  verify->add_option("--port-file", port_file, "Write the bound port here");
  verify->add_option("--sessions", sessions, "Sessions to serve before exiting");
  verify->add_option("--log", log_path, "JSON-lines event log");
  add_common(verify, vc, false);

  auto* prove = app.add_subcommand("prove", "Run the prover against a TCP verifier");
  Common pc;
  std::string witness;
  prove->add_option("--file", file_path, "Frozen public file")->required()->check(CLI::ExistingFile);
  prove->add_option("--index", index, "Index of the verifier's key");
  prove->add_option("--witness", witness, "Discrete log w of x = g^w")->required();
  prove->add_option("--host", host, "Verifier address");
  prove->add_option("--port", port, "Verifier port")->required();
  prove->add_option("--log", log_path, "JSON-lines event log");
  add_common(prove, pc, false);

  // in-process session
  auto* session = app.add_subcommand("session", "Run one honest session in process");
  Common sc;
  session->add_option("--params", params_path, "Parameter file");
  session->add_option("--log", log_path, "JSON-lines event log");
  add_common(session, sc);

  // replay
  auto* replay = app.add_subcommand("replay", "Check that a logged session replays byte-identically");
  Common rc;
  replay->add_option("--log", log_path, "JSON-lines event log")->required()->check(CLI::ExistingFile);
  replay->add_option("--params", params_path, "Parameter file");
  add_common(replay, rc);

  // attack
  auto* attack = app.add_subcommand("attack", "Run a man-in-the-middle scenario");
  Common ac;
  std::string scenario;
  std::size_t trials = 100;
  bool bpk = false;
  attack->add_option("--scenario", scenario, "Scenario name")->required()->check(CLI::IsMember(harness::scenario_names()));
  attack->add_option("--trials", trials, "Independent seeded runs")->check(CLI::PositiveNumber);
  attack->add_flag("--bpk", bpk, "Disable the authenticated public file");
  attack->add_option("--params", params_path, "Parameter file");
  attack->add_option("--log", log_path, "JSON-lines event log of the first run");
  add_common(attack, ac);

  // extract
  auto* extract = app.add_subcommand("extract", "Run the rewinding extractor against a scenario");
  Common ec;
  std::size_t target = 1, max_rewinds = 64;
  std::string ext_scenario = "wrapped";
  extract->add_option("--scenario", ext_scenario, "Scenario name")->check(CLI::IsMember(harness::scenario_names()));
  extract->add_option("--target", target, "Right session to extract from (1-based)")->check(CLI::PositiveNumber);
  extract->add_option("--max-rewinds", max_rewinds, "Rewinds per extraction point");
  extract->add_option("--params", params_path, "Parameter file");
  extract->add_option("--log", log_path, "JSON-lines event log of the forward view");
  add_common(extract, ec);

  CLI11_PARSE(app, argc, argv);

  try {
    if (params->parsed()) {
      SeededRng rng(params_seed);
      const auto p = algebra::gen_schnorr_params(bits, rng, {.use_table = !search});
      emit(out, params_json(p).dump(2));
      return 0;
    }

    if (keygen->parsed()) {
      const auto suite = algebra::Suite::make(load_params(params_path), parse_backend(kc.backend));
      SeededRng rng(kc.seed);
      const auto keys = protocol::verifier_keygen(suite, rng);
      const sig::BBSigKey& sk = keys.bit == 0 ? keys.sk0 : keys.sk1;
      ordered_json j{{"params", params_json(suite.params())},
                     {"backend", suite.pairing.name()},
                     {"bit", keys.bit},
                     {"sk", {{"x", sk.x.str()}, {"y", sk.y.str()}}},
                     {"keys", nlohmann::ordered_json::parse(protocol::keys_to_json(keys.vk0, keys.vk1))}};
      emit(out, j.dump(2));
      return 0;
    }

    if (reg->parsed()) {
      const KeyFile k = load_key(key_path);
      std::ifstream probe(file_path);
      protocol::PublicFile file = probe ? protocol::PublicFile::from_json(read_file(file_path))
                                        : protocol::PublicFile(k.suite);
      if (file.suite().params() != k.suite.params() || file.suite().pairing.name() != k.suite.pairing.name()) {
        throw Error("key and public file use different parameters");
      }
      const std::size_t idx = file.add(k.keys.vk0, k.keys.vk1, protocol::Owner::kHonest, owner_id);
      write_file(file_path, file.to_json() + "\n");
      std::cout << idx << "\n";
      return 0;
    }

    if (freeze->parsed()) {
      protocol::PublicFile file = protocol::PublicFile::from_json(read_file(file_path));
      file.freeze();
      write_file(file_path, file.to_json() + "\n");
      std::cout << "frozen with " << file.size() << " keys\n";
      return 0;
    }

    if (verify->parsed()) {
      const auto file = load_public_file(file_path);
      const KeyFile k = load_key(key_path);
      if (file->at(index).vk0 != k.keys.vk0 || file->at(index).vk1 != k.keys.vk1) {
        throw Error("key file does not match record " + std::to_string(index));
      }
      const auto cfg = protocol::Config::make(file->suite(), commit::parse_commit_mode(vc.mode), vc.owf);
      net::Listener listener(host, port);
      if (!port_file.empty()) write_file(port_file, std::to_string(listener.port()) + "\n");
      std::cerr << "listening on " << host << ":" << listener.port() << "\n";
      SeededRng seeds(vc.seed);
      std::vector<harness::LogRecord> log;
      int rejected = 0;
      for (std::size_t s = 1; s <= sessions; ++s) {
        net::Connection conn = listener.accept();
        protocol::Verifier verifier(cfg, file, k.keys.honest(index), RngHandle(seeds.word()));
        const std::string name = "S" + std::to_string(s);
        while (auto in = conn.receive()) {
          log.push_back({log.size() + 1, name, "P>V", in->type, in->encode()});
          auto reply = verifier.on_message(*in);
          if (!reply) break;
          log.push_back({log.size() + 1, name, "V>P", reply->type, reply->encode()});
          conn.send(*reply);
          if (reply->type == wire::MsgType::kResult) break;
        }
        if (verifier.accepted()) {
          std::cout << "ACCEPT\n";
        } else {
          ++rejected;
          std::cout << "REJECT: " << (verifier.reject_reason().empty() ? "incomplete session" : verifier.reject_reason())
                    << "\n";
        }
      }
      write_log(log_path, log);
      return rejected == 0 ? 0 : 1;
    }

    if (prove->parsed()) {
      const auto file = load_public_file(file_path);
      const auto cfg = protocol::Config::make(file->suite(), commit::parse_commit_mode(pc.mode), pc.owf);
      const auto w = file->suite().group->scalar(mpz_class(witness));
      const auto x = file->suite().group->generator().pow(w);
      protocol::Prover prover(cfg, file->at(index), x, protocol::RelationWitness{w}, RngHandle(pc.seed));
      net::Connection conn = net::Connection::connect(host, port);
      std::vector<harness::LogRecord> log;
      std::optional<wire::Frame> next = prover.start();
      bool accepted = false;
      while (next) {
        log.push_back({log.size() + 1, "S1", "P>V", next->type, next->encode()});
        conn.send(*next);
        auto in = conn.receive();
        if (!in) break;
        log.push_back({log.size() + 1, "S1", "V>P", in->type, in->encode()});
        if (in->type == wire::MsgType::kResult) {
          accepted = in->payload.size() == 1 && in->payload[0] == 1;
          break;
        }
        next = prover.on_message(*in);
      }
      write_log(log_path, log);
      if (prover.aborted()) std::cout << "ABORT: " << prover.abort_reason() << "\n";
      std::cout << (accepted ? "ACCEPT" : "REJECT") << "\n";
      return accepted ? 0 : 1;
    }

    if (session->parsed() || replay->parsed()) {
      const Common& c = session->parsed() ? sc : rc;
      SessionOptions opts;
      opts.params = load_params(params_path);
      opts.backend = parse_backend(c.backend);
      opts.mode = commit::parse_commit_mode(c.mode);
      opts.owf = c.owf;
      opts.seed = c.seed;
      const SessionOutcome r = run_session(opts);
      if (session->parsed()) {
        write_log(log_path, r.log);
        ordered_json j{{"accepted", r.accepted},
                       {"messages_after_start", r.messages_after_start},
                       {"prover_exponentiations", r.prover.exponentiations},
                       {"verifier_exponentiations", r.verifier.exponentiations},
                       {"pairings", r.prover.pairings + r.verifier.pairings}};
        if (!r.accepted) j["reason"] = r.reject_reason;
        std::cout << j.dump() << "\n";
        return r.accepted ? 0 : 1;
      }
      const auto logged = harness::parse_jsonl(read_file(log_path));
      const bool identical = logged == r.log;
      const bool verifier_ok = replay_session(opts, logged);
      std::cout << (identical ? "IDENTICAL" : "MISMATCH") << " " << (verifier_ok ? "ACCEPT" : "REJECT") << "\n";
      return identical && verifier_ok ? 0 : 1;
    }

    if (attack->parsed()) {
      const auto adv = harness::make_scenario(scenario);
      harness::AttackConfig cfg = attack_config(ac, bpk, params_path);
      const std::size_t t = harness::scenario_target(scenario);
      std::size_t accepted = 0, successes = 0, refused = 0, aborted = 0;
      for (std::size_t i = 0; i < trials; ++i) {
        harness::AttackConfig c = cfg;
        c.seed = cfg.seed + i;
        const harness::View v = harness::run_attack(*adv, c);
        if (i == 0) write_log(log_path, v.log);
        if (t && t <= v.right.size() && v.right[t - 1].accepted) ++accepted;
        if (t && harness::attack_succeeded(v, t)) ++successes;
        if (!v.refusals.empty()) ++refused;
        if (v.aborted) ++aborted;
      }
      ordered_json j{{"scenario", scenario},
                     {"apk", !bpk},
                     {"trials", trials},
                     {"target", t},
                     {"accepted", accepted},
                     {"estimate_success", static_cast<double>(successes) / static_cast<double>(trials)},
                     {"refused_runs", refused},
                     {"aborted_runs", aborted}};
      std::cout << j.dump() << "\n";
      std::cout << accepted << " of " << trials << " " << scenario << " sessions accepted\n";
      return 0;
    }

    if (extract->parsed()) {
      harness::ExtractorConfig cfg;
      cfg.attack = attack_config(ec, false, params_path);
      cfg.target = target;
      cfg.max_rewinds = max_rewinds;
      const auto r = harness::run_extractor(*harness::make_scenario(ext_scenario), cfg);
      write_log(log_path, r.view.log);
      ordered_json j{{"scenario", ext_scenario},
                     {"target", target},
                     {"outcome", std::string(harness::to_string(r.outcome))},
                     {"key_rewinds", r.stats.key_rewinds},
                     {"witness_rewinds", r.stats.witness_rewinds},
                     {"resets", r.stats.resets},
                     {"steps", r.stats.steps},
                     {"reset_discipline", r.reset_discipline_ok},
                     {"knowledge_error", r.knowledge_error}};
      if (!r.failure.empty()) j["failure"] = r.failure;
      if (r.witness) {
        j["statement"] = r.statement.to_integer().get_str();
        j["witness"] = r.witness->str();
        j["witness_valid"] = r.statement.group()->generator().pow(*r.witness) == r.statement;
      }
      if (r.opening) j["branch"] = r.branch;
      for (const auto& k : r.recovered) {
        j["recovered_keys"].push_back({{"index", k.index}, {"bit", k.bit}, {"x", k.sk.x.str()}, {"y", k.sk.y.str()}});
      }
      std::cout << j.dump() << "\n";
      return r.outcome == harness::Outcome::kFailure ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
