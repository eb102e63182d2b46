#include "pathword/cli.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "pathword/diagram.hpp"
#include "pathword/error.hpp"
#include "pathword/http_api.hpp"
#include "pathword/path.hpp"
#include "pathword/service.hpp"
#include "pathword/strength.hpp"

namespace pathword::cli {
namespace {

using nlohmann::json;

// Raised for bad flag values discovered after parsing; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& source, std::istream& in) {
  if (source == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(source, std::ios::binary);
  if (!file) throw Error(ErrorCode::kStorage, "cannot read " + source);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

void write_output(const std::string& target, const std::string& content, std::ostream& out) {
  if (target.empty() || target == "-") {
    out << content;
    return;
  }
  std::ofstream file(target, std::ios::binary | std::ios::trunc);
  if (!file || !(file << content)) throw Error(ErrorCode::kStorage, "cannot write " + target);
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Diagram documents may be either the text or the JSON encoding. Coverage
// is not enforced here: derive, render and oracle accept any grid.
Grid load_grid(const std::string& source, std::istream& in) {
  const std::string text = read_source(source, in);
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    const json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::kSchema, "diagram file is not valid JSON");
    return grid_from_json(j);
  }
  return decode_grid(text);
}

struct PathInput {
  std::string spec;
  std::string file;
  bool given() const { return !spec.empty() || !file.empty(); }
};

void add_path_options(CLI::App* cmd, PathInput& input) {
  auto* spec = cmd->add_option("--path", input.spec, "Path spec, e.g. \"6x6 : (1,1) (1,2)\"");
  auto* file = cmd->add_option("--path-file", input.file, "File holding the path spec ('-' for stdin)");
  spec->excludes(file);
}

Path load_path(const PathInput& input, std::istream& in) {
  const std::string text = input.file.empty() ? input.spec : read_source(input.file, in);
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    const json j = json::parse(body, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::kSchema, "path file is not valid JSON");
    return path_from_json(j);
  }
  return parse_path(body);
}

std::pair<std::string, int> split_listen(const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw UsageError("listen address must be HOST:PORT");
  try {
    const int port = std::stoi(listen.substr(colon + 1));
    if (port < 0 || port > 65535) throw std::out_of_range("port");
    return {listen.substr(0, colon), port};
  } catch (const std::logic_error&) {
    throw UsageError("invalid port in '" + listen + "'");
  }
}

json check_response(const httplib::Result& res, std::initializer_list<int> ok) {
  if (!res) {
    throw Error(ErrorCode::kStorage, "request failed: " + httplib::to_string(res.error()));
  }
  json body = res->body.empty() ? json::object() : json::parse(res->body, nullptr, false);
  for (int status : ok) {
    if (res->status == status) return body;
  }
  std::string message = "server returned " + std::to_string(res->status);
  if (body.is_object() && body.contains("error") && body["error"].is_string()) {
    message += " (" + body["error"].get<std::string>() + ")";
  }
  if (body.is_object() && body.contains("message") && body["message"].is_string()) message += ": " + body["message"].get<std::string>();
  throw Error(ErrorCode::kDomain, message);
}

std::string url_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xf];
    }
  }
  return out;
}

json analysis_json(const StrengthReport& report) {
  json j = to_json(report);
  j["bits"] = bits_of_strength(report.alphabet_size, report.length, false);
  j["injective_bits"] = report.ratio_exact
                            ? json(bits_of_strength(report.alphabet_size, report.length, true))
                            : json(nullptr);
  const auto comp = compensation_length(report.alphabet_size, report.length);
  j["compensation_length"] = comp ? json(*comp) : json(nullptr);
  const EntropyComparison e = entropy_comparison(report.length);
  j["entropy_comparison"] = {{"english_bits", e.english_bits},
                             {"typical_password_bits", e.typical_password_bits},
                             {"ascii_bits", e.ascii_bits}};
  return j;
}

std::string analysis_text(const StrengthReport& report) {
  std::ostringstream out;
  out << to_table(report);
  auto row = [&](std::string_view key, const std::string& value) {
    out << std::left << std::setw(24) << key << value << '\n';
  };
  std::ostringstream bits;
  bits << std::fixed << std::setprecision(2)
       << bits_of_strength(report.alphabet_size, report.length, false);
  row("bits", bits.str());
  if (report.ratio_exact) {
    std::ostringstream ib;
    ib << std::fixed << std::setprecision(2)
       << bits_of_strength(report.alphabet_size, report.length, true);
    row("injective_bits", ib.str());
  }
  const auto comp = compensation_length(report.alphabet_size, report.length);
  row("compensation_length", comp ? std::to_string(*comp) : "none");
  const EntropyComparison e = entropy_comparison(report.length);
  std::ostringstream ec;
  ec << "english " << e.english_bits << ", typical password " << e.typical_password_bits
     << ", ascii " << e.ascii_bits << " bits (literature estimates)";
  row("entropy_comparison", ec.str());
  return out.str();
}

}  // namespace

double parse_timeframe(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty timeframe");
  double multiplier = 1;
  std::string_view number = text;
  switch (text.back()) {
    case 's': multiplier = 1; number.remove_suffix(1); break;
    case 'h': multiplier = 3600; number.remove_suffix(1); break;
    case 'd': multiplier = 24 * 3600; number.remove_suffix(1); break;
    case 'y': multiplier = 365.0 * 24 * 3600; number.remove_suffix(1); break;
    default: break;
  }
  std::size_t used = 0;
  const std::string digits(number);
  const double value = std::stod(digits, &used);
  if (used != digits.size() || !std::isfinite(value) || value <= 0) {
    throw std::invalid_argument("invalid timeframe '" + std::string(text) + "'");
  }
  return value * multiplier;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"pathword: passwords read off random grids along a secret path"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  // gen-diagram
  std::string alphabet_spec = "hex";
  int rows = 0;
  int cols = 0;
  std::optional<std::uint64_t> seed;
  std::string out_file;
  auto* gen = app.add_subcommand("gen-diagram", "Generate a covering random diagram");
  gen->add_option("--alphabet", alphabet_spec, "hex, digit-pairs or comma-separated letters");
  gen->add_option("--rows", rows)->required();
  gen->add_option("--cols", cols)->required();
  gen->add_option("--seed", seed, "Deterministic seed (omit for OS entropy)");
  gen->add_option("--out", out_file, "Output file (default stdout)");

  // derive / render
  std::string diagram_file;
  PathInput path_input;
  auto* derive_cmd = app.add_subcommand("derive", "Read the password a path spells on a diagram");
  derive_cmd->add_option("--diagram", diagram_file)->required();
  add_path_options(derive_cmd, path_input);

  auto* render_cmd = app.add_subcommand("render", "Print a diagram, optionally with a path overlay");
  render_cmd->add_option("--diagram", diagram_file)->required();
  add_path_options(render_cmd, path_input);

  // random-path
  int length = 0;
  auto* random_cmd = app.add_subcommand("random-path", "Draw a uniformly random injective path");
  random_cmd->add_option("--rows", rows)->required();
  random_cmd->add_option("--cols", cols)->required();
  random_cmd->add_option("-n,--length", length)->required();
  random_cmd->add_option("--seed", seed);

  // analyze
  std::int64_t alphabet_size = 0;
  std::int64_t n = 0;
  double rate = 1e6;
  std::string timeframe = "1y";
  bool pathword_only = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Strength report for |A|^n passwords");
  analyze_cmd->add_option("-A,--alphabet-size", alphabet_size)->required();
  analyze_cmd->add_option("-n,--length", n)->required();
  analyze_cmd->add_option("--rate", rate, "Attacker guesses per second");
  analyze_cmd->add_option("--timeframe", timeframe, "Time frame T_S: number with s/h/d/y unit");
  analyze_cmd->add_flag("--pathword", pathword_only,
                        "Require the injective (pathword) analysis; n > |A| is an error");

  // oracle
  std::uint64_t budget = kDefaultOracleBudget;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustively enumerate injective reads of a diagram");
  oracle_cmd->add_option("--diagram", diagram_file)->required();
  oracle_cmd->add_option("-n,--length", n)->required();
  oracle_cmd->add_option("--budget", budget, "Maximum sequences to enumerate");

  // serve
  std::string config_file;
  std::string listen = "127.0.0.1:8080";
  std::string store_dir = "pathword-store";
  std::optional<double> ttl_seconds;
  auto* serve_cmd = app.add_subcommand("serve", "Run the challenge-response service");
  serve_cmd->add_option("--config", config_file, "JSON config {listen, store, ttl_seconds}");
  auto* listen_opt = serve_cmd->add_option("--listen", listen, "HOST:PORT (port 0 picks one)");
  auto* store_opt = serve_cmd->add_option("--store", store_dir, "State directory");
  serve_cmd->add_option("--ttl", ttl_seconds, "Challenge lifetime in seconds");

  // client commands
  std::string server = "http://127.0.0.1:8080";
  std::string user;
  std::string label;
  std::string challenge_id;
  std::string password;
  std::string password_file;
  auto add_server = [&](CLI::App* cmd) { cmd->add_option("--server", server, "Service base URL"); };

  auto* enroll_cmd = app.add_subcommand("enroll", "Enroll a secret path");
  add_server(enroll_cmd);
  enroll_cmd->add_option("--user", user)->required();
  enroll_cmd->add_option("--label", label)->required();
  add_path_options(enroll_cmd, path_input);
  std::string enroll_alphabet = "digit-pairs";
  enroll_cmd->add_option("--alphabet", enroll_alphabet, "Alphabet of issued diagrams");

  auto* challenge_cmd = app.add_subcommand("challenge", "Request a fresh login diagram");
  add_server(challenge_cmd);
  challenge_cmd->add_option("--user", user)->required();
  challenge_cmd->add_option("--label", label)->required();
  challenge_cmd->add_option("--out", out_file, "Write the diagram document here");

  auto* verify_cmd = app.add_subcommand("verify", "Answer a challenge");
  add_server(verify_cmd);
  verify_cmd->add_option("--challenge", challenge_id)->required();
  auto* pw = verify_cmd->add_option("--password", password);
  auto* pwf = verify_cmd->add_option("--password-file", password_file, "'-' for stdin");
  pw->excludes(pwf);

  auto* revoke_cmd = app.add_subcommand("revoke", "Remove an enrollment and its challenges");
  add_server(revoke_cmd);
  revoke_cmd->add_option("--user", user)->required();
  revoke_cmd->add_option("--label", label)->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("pathword");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  const bool as_json = format == "json";
  try {
    if (*gen) {
      const Diagram d = generate_diagram(Alphabet::parse(alphabet_spec), rows, cols, seed);
      write_output(out_file, as_json ? diagram_to_json(d).dump(2) + "\n" : encode_diagram(d), out);
      return kOk;
    }
    if (*derive_cmd) {
      if (!path_input.given()) throw UsageError("derive needs --path or --path-file");
      const Grid g = load_grid(diagram_file, in);
      const Password p = derive(load_path(path_input, in), g);
      if (as_json) {
        out << json{{"password", p.text}, {"letters", p.letters}}.dump() << '\n';
      } else {
        out << p.text << '\n';
      }
      return kOk;
    }
    if (*render_cmd) {
      const Grid g = load_grid(diagram_file, in);
      std::optional<Path> path;
      if (path_input.given()) path = load_path(path_input, in);
      out << render_path_overlay(g, path);
      return kOk;
    }
    if (*random_cmd) {
      const Path p = random_path({rows, cols}, length, seed);
      out << (as_json ? path_to_json(p).dump() : format_path(p)) << '\n';
      return kOk;
    }
    if (*analyze_cmd) {
      AttackerModel model;
      model.guesses_per_second = rate;
      try {
        model.time_frame_seconds = parse_timeframe(timeframe);
      } catch (const std::exception&) {
        throw UsageError("invalid --timeframe '" + timeframe + "'");
      }
      if (pathword_only && n > alphabet_size) {
        throw Error(ErrorCode::kDomain, "length " + std::to_string(n) + " exceeds alphabet size " +
                                            std::to_string(alphabet_size) +
                                            ": no injective path reads that many distinct letters");
      }
      const StrengthReport report = analyze(alphabet_size, n, model);
      out << (as_json ? analysis_json(report).dump(2) + "\n" : analysis_text(report));
      return kOk;
    }
    if (*oracle_cmd) {
      const OracleReport report = enumerate_oracle(load_grid(diagram_file, in), n, budget);
      out << (as_json ? to_json(report).dump(2) + "\n" : to_table(report));
      return kOk;
    }
    if (*serve_cmd) {
      double ttl = static_cast<double>(kDefaultChallengeTtl.count());
      if (!config_file.empty()) {
        const json config = json::parse(read_source(config_file, in), nullptr, false);
        if (!config.is_object()) throw UsageError("config must be a JSON object");
        if (config.contains("listen") && listen_opt->count() == 0) listen = config["listen"].get<std::string>();
        if (config.contains("store") && store_opt->count() == 0) store_dir = config["store"].get<std::string>();
        if (config.contains("ttl_seconds")) ttl = config["ttl_seconds"].get<double>();
      }
      if (ttl_seconds) ttl = *ttl_seconds;
      if (!(ttl > 0) || !std::isfinite(ttl)) throw UsageError("TTL must be positive");
      const auto [host, port] = split_listen(listen);

      ServiceConfig service_config{store_dir, MasterKey::from_env(),
                                   std::chrono::milliseconds(static_cast<std::int64_t>(ttl * 1000))};
      AuthService service(std::move(service_config));
      httplib::Server http;
      register_routes(http, service);
      int bound = port;
      if (port == 0) {
        bound = http.bind_to_any_port(host);
      } else if (!http.bind_to_port(host, port)) {
        bound = -1;
      }
      if (bound < 0) throw Error(ErrorCode::kStorage, "cannot listen on " + listen);
      err << "listening on " << host << ':' << bound << std::endl;
      http.listen_after_bind();
      return kOk;
    }
    if (*enroll_cmd) {
      if (!path_input.given()) throw UsageError("enroll needs --path or --path-file");
      const Path path = load_path(path_input, in);
      const GridParams params{Alphabet::parse(enroll_alphabet), path.dims().rows, path.dims().cols};
      httplib::Client client(server);
      const json body = {{"user", user}, {"label", label}, {"path", path_to_json(path)},
                         {"grid_params", grid_params_to_json(params)}};
      const json reply = check_response(client.Post("/enroll", body.dump(), "application/json"), {201});
      if (as_json) {
        out << reply.dump() << '\n';
      } else {
        out << "enrolled " << user << '/' << label << '\n';
      }
      return kOk;
    }
    if (*challenge_cmd) {
      httplib::Client client(server);
      const json body = {{"user", user}, {"label", label}};
      const json reply = check_response(client.Post("/challenge", body.dump(), "application/json"), {200});
      const Diagram d = diagram_from_json(reply.at("diagram"));
      if (as_json) {
        out << reply.dump() << '\n';
        if (!out_file.empty()) write_output(out_file, encode_diagram(d), out);
        return kOk;
      }
      out << reply.at("challenge_id").get<std::string>() << '\n';
      if (out_file.empty()) {
        out << encode_diagram(d);
      } else {
        write_output(out_file, encode_diagram(d), out);
      }
      return kOk;
    }
    if (*verify_cmd) {
      const std::string submitted = password_file.empty() ? password : read_source(password_file, in);
      httplib::Client client(server);
      const json body = {{"challenge_id", challenge_id}, {"password", submitted}};
      const json reply = check_response(client.Post("/verify", body.dump(), "application/json"), {200});
      const std::string outcome = reply.at("outcome").get<std::string>();
      out << (as_json ? reply.dump() : outcome) << '\n';
      return outcome == to_string(VerifyOutcome::kAccepted) ? kOk : kDomainError;
    }
    if (*revoke_cmd) {
      httplib::Client client(server);
      check_response(client.Delete("/enrollment/" + url_encode(user) + "/" + url_encode(label)), {204});
      if (!as_json) out << "revoked " << user << '/' << label << '\n';
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  err << "usage error: no subcommand\n";
  return kUsageError;
}

}  // namespace pathword::cli
