// cli.cpp

#include "imnim/cli.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "imnim/beatty.hpp"
#include "imnim/engine.hpp"
#include "imnim/imitation.hpp"
#include "imnim/json_io.hpp"
#include "imnim/oracle.hpp"
#include "imnim/service.hpp"
#include "imnim/wythoff.hpp"

namespace imnim::cli {

namespace {

// Bad user input that CLI11 cannot see (malformed --pos, illegal replay...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int p = 1;
  int m = 1;
  std::size_t rows = 20;
  Count bound = 20;
  Count k_max = 10000;
  std::string format = "text";
  std::string output;
  std::string pos;
  std::string pending;
  std::optional<int> credit_mover;
  std::optional<int> credit_other;
  std::string replay;
  unsigned threads = 0;
  std::string engine = "second";
  std::string host = "127.0.0.1";
  int port = 8080;
  Count pile_cap = 500;
  std::string log_path;
};

Count parse_count(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  Count value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("bad " + what + ": '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, sep)) parts.push_back(part);
  return parts;
}

Position parse_position(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError("position must look like a,b: '" + text + "'");
  const Position pos{parse_count(parts[0], "pile height"), parse_count(parts[1], "pile height")};
  if (pos.pile0 < 0 || pos.pile1 < 0) throw UsageError("pile heights must be non-negative");
  return pos;
}

Pile parse_pile_token(const std::string& text) {
  if (text == "0") return Pile::Zero;
  if (text == "1") return Pile::One;
  if (auto pile = parse_pile(text)) return *pile;
  throw UsageError("bad pile '" + text + "' (use 0, 1, pile0 or pile1)");
}

// "pile:amount", shared by --pending (amount = window base) and --replay.
std::pair<Pile, Count> parse_pile_amount(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw UsageError("expected pile:amount, got '" + text + "'");
  return {parse_pile_token(parts[0]), parse_count(parts[1], "amount")};
}

DynamicState build_state(const Options& opt, const GameParams& params) {
  if (!opt.replay.empty()) {
    if (!opt.pos.empty() || !opt.pending.empty() || opt.credit_mover || opt.credit_other) {
      throw UsageError("--replay cannot be combined with --pos, --pending or credit flags");
    }
    const auto steps = split(opt.replay, ';');
    if (steps.empty()) throw UsageError("empty --replay");
    DynamicState state = initial_state(parse_position(steps[0]), params);
    for (std::size_t i = 1; i < steps.size(); ++i) {
      const auto [pile, amount] = parse_pile_amount(steps[i]);
      const Move move{pile, amount};
      if (auto rule = violated_rule(state, move, params)) {
        throw UsageError("replay step " + std::to_string(i) + " (" + steps[i] + ") is illegal in " +
                         describe(state) + ": " + to_string(*rule));
      }
      state = apply_move(state, move, params);
    }
    return state;
  }

  if (opt.pos.empty()) throw UsageError("--pos or --replay is required");
  DynamicState state = initial_state(parse_position(opt.pos), params);
  if (!opt.pending.empty()) {
    const auto [target, base] = parse_pile_amount(opt.pending);
    state.pending = PendingImitation{target, base};
  }
  if (opt.credit_mover) state.credit_mover = *opt.credit_mover;
  if (opt.credit_other) state.credit_other = *opt.credit_other;
  if (!is_consistent(state, params)) {
    throw UsageError("history flags do not form a valid state: " + describe(state));
  }
  return state;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* name : allowed) {
    if (format == name) return;
  }
  throw UsageError("unsupported --format '" + format + "'");
}

// Writes to --output when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : stream_(&out) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string describe_move(const Position& from, const Move& move) {
  Position to = from;
  to[move.pile] -= move.amount;
  std::string where = to_string(move.pile);
  if (from.pile0 != from.pile1) {
    const bool larger = from[move.pile] > from[other(move.pile)];
    where = larger ? "larger pile" : "smaller pile";
  }
  return "remove " + std::to_string(move.amount) + " from " + where + " → " + to_string(to);
}

int cmd_table(const Options& opt, std::ostream& out) {
  require_format(opt.format, {"csv", "json", "text"});
  const WythoffTable table = WythoffTable::generate(GameParams(opt.p, opt.m), opt.rows);
  Sink sink(opt.output, out);
  if (opt.format == "csv") {
    write_csv(*sink, table);
  } else if (opt.format == "json") {
    *sink << to_json(table).dump(2) << '\n';
  } else {
    for (std::size_t n = 0; n < table.size(); ++n) {
      *sink << "n=" << n << "  (" << table.row(n).a << ", " << table.row(n).b << ")  delta=" << table.delta(n)
            << '\n';
    }
  }
  return kOk;
}

int cmd_classify(const Options& opt, std::ostream& out) {
  require_format(opt.format, {"json", "text"});
  const GameParams params(opt.p, opt.m);
  const DynamicState state = build_state(opt, params);
  const WythoffTable table = WythoffTable::covering(params, state.position.high());
  const Verdict verdict = classify(state, params, table);
  const StaticClass cls = classify_static(state.position, params, table);

  Sink sink(opt.output, out);
  if (opt.format == "json") {
    nlohmann::json body = {{"params", to_json(params)},
                           {"state", to_json(state)},
                           {"verdict",
                            {{"outcome", to_string(verdict.outcome)},
                             {"clause", to_string(verdict.clause)},
                             {"winningMove", verdict.winning_move ? to_json(*verdict.winning_move)
                                                                  : nlohmann::json(nullptr)}}},
                           {"staticClass", {{"kind", to_string(cls.kind)}, {"reason", to_string(cls.reason)}}}};
    *sink << body.dump(2) << '\n';
  } else if (verdict.outcome == Outcome::P) {
    *sink << "P (clause " << to_string(verdict.clause) << ")\n";
  } else {
    *sink << "N; winning move: " << describe_move(state.position, *verdict.winning_move) << '\n';
  }
  return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  require_format(opt.format, {"json", "text"});
  const SweepReport report = sweep(GameParams(opt.p, opt.m), opt.bound, opt.threads);
  Sink sink(opt.output, out);
  if (opt.format == "json") {
    *sink << to_json(report).dump(2) << '\n';
  } else {
    *sink << "(p,m)=(" << opt.p << ',' << opt.m << ") bound " << opt.bound << ": " << report.visited
          << " states, " << report.mismatches.size() << " mismatches\n";
    for (const auto& mm : report.mismatches) {
      *sink << "  " << describe(mm.state) << " oracle " << to_string(mm.oracle) << ", classifier "
            << to_string(mm.classifier) << '\n';
    }
    for (const auto& pos : report.initial_mismatches) {
      *sink << "  initial " << to_string(pos) << " disagrees with the Wythoff table\n";
    }
    for (const auto& pos : report.golden_mismatches) {
      *sink << "  initial " << to_string(pos) << " disagrees with the golden-ratio pairs\n";
    }
  }
  return report.ok() ? kOk : kCheckFailed;
}

int cmd_beatty(const Options& opt, std::ostream& out) {
  require_format(opt.format, {"json", "text"});
  const AppendixReport report = verify_appendix(opt.p, opt.k_max);
  Sink sink(opt.output, out);
  if (opt.format == "json") {
    *sink << to_json(report).dump(2) << '\n';
  } else {
    auto verdict = [](bool ok) { return ok ? "ok" : "FAILED"; };
    *sink << "p=" << report.p << " K=" << report.k_max << '\n'
          << "  counting excess in [" << report.counting_min << ", " << report.counting_max << "]: "
          << verdict(report.counting_ok) << '\n'
          << "  epsilon_k: " << verdict(report.eps_ok) << '\n'
          << "  a* gaps: " << verdict(report.a_star_gaps_ok) << '\n'
          << "  b* gaps: " << verdict(report.b_star_gaps_ok) << '\n'
          << "  max |a_pi - a*| = " << report.max_deviation << " (bound " << report.p - 1
          << "): " << verdict(report.main_theorem_ok) << '\n'
          << "  pi offsets {";
    bool first = true;
    for (Count e : report.epsilon_set) {
      *sink << (first ? "" : ",") << e;
      first = false;
    }
    *sink << "}: " << verdict(report.corollary_ok)
          << (report.epsilon_within_conjecture() ? "" : " (outside {0,1})") << '\n';
    for (const auto& failure : report.failures) *sink << "  failure: " << failure << '\n';
  }
  return report.ok() ? kOk : kCheckFailed;
}

int cmd_play(const Options& opt, std::ostream& out, std::istream& in) {
  const GameParams params(opt.p, opt.m);
  if (opt.engine != "first" && opt.engine != "second") throw UsageError("--engine must be first or second");
  if (opt.pos.empty()) throw UsageError("--pos is required");
  DynamicState state = initial_state(parse_position(opt.pos), params);
  const WythoffTable table = WythoffTable::covering(params, state.position.high());
  bool engine_turn = opt.engine == "first";

  out << "(" << params.p << "," << params.m << ")-Imitation Nim. Enter moves as 'pile amount' (pile 0 or 1), "
      << "'q' to quit.\n";
  while (true) {
    out << describe(state) << '\n';
    if (legal_moves(state, params).empty()) {
      out << (engine_turn ? "You win.\n" : "Engine wins.\n");
      return kOk;
    }
    if (engine_turn) {
      const Move move = *engine_move(state, params, table);
      out << "engine: " << describe_move(state.position, move)
          << (is_imitation(state, move, params) ? " (imitation)" : "") << '\n';
      state = apply_move(state, move, params);
      engine_turn = false;
      continue;
    }
    out << "> " << std::flush;
    std::string line;
    if (!std::getline(in, line) || line == "q") {
      out << "bye\n";
      return kOk;
    }
    std::istringstream words(line);
    std::string pile_text;
    std::string amount_text;
    if (!(words >> pile_text >> amount_text)) {
      out << "expected 'pile amount'\n";
      continue;
    }
    try {
      const Move move{parse_pile_token(pile_text), parse_count(amount_text, "amount")};
      if (auto rule = violated_rule(state, move, params)) {
        out << "illegal: " << to_string(*rule) << '\n';
        continue;
      }
      state = apply_move(state, move, params);
      engine_turn = true;
    } catch (const UsageError& e) {
      out << e.what() << '\n';
    }
  }
}

int cmd_serve(const Options& opt, std::ostream& out, std::ostream& err) {
  service::ServiceOptions options;
  options.pile_cap = opt.pile_cap;
  if (!opt.log_path.empty()) options.log_path = opt.log_path;
  out << "serving on http://" << opt.host << ':' << opt.port << '\n' << std::flush;
  if (!service::serve(opt.host, opt.port, options)) {
    err << "cannot listen on " << opt.host << ':' << opt.port << '\n';
    return kResource;
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"(p,m)-Imitation Nim toolkit", "imnim"};
  app.require_subcommand(1);
  Options opt;

  auto params = [&opt](CLI::App* sub) {
    sub->add_option("--p", opt.p, "imitation budget parameter p >= 1")->check(CLI::PositiveNumber);
    sub->add_option("--m", opt.m, "imitation window width m >= 1")->check(CLI::PositiveNumber);
  };
  auto format = [&opt](CLI::App* sub, const std::string& help) {
    sub->add_option("--format", opt.format, help);
    sub->add_option("--output", opt.output, "write to this file instead of stdout");
  };

  auto* table = app.add_subcommand("table", "print the (p,m)-Wythoff table");
  params(table);
  table->add_option("--rows", opt.rows, "number of rows")->check(CLI::PositiveNumber);
  format(table, "csv, json or text");

  auto* cls = app.add_subcommand("classify", "outcome and winning move of a position");
  params(cls);
  cls->add_option("--pos", opt.pos, "position a,b (pile0,pile1)");
  cls->add_option("--pending", opt.pending, "open imitation window target:base, e.g. pile1:1");
  cls->add_option("--credit,--credit-mover", opt.credit_mover, "imitation credit of the player to move");
  cls->add_option("--credit-other", opt.credit_other, "imitation credit of the opponent");
  cls->add_option("--replay", opt.replay, "derive the state from 'a,b;pile:amount;...'");
  format(cls, "text or json");

  auto* verify = app.add_subcommand("verify", "brute-force check of the classifier on a box");
  params(verify);
  verify->add_option("--bound", opt.bound, "largest pile height");
  verify->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
  format(verify, "text or json");

  auto* beatty = app.add_subcommand("beatty", "check the Beatty comparison for (p,1)");
  beatty->add_option("--p", opt.p, "p >= 1")->check(CLI::PositiveNumber);
  beatty->add_option("--K", opt.k_max, "number of terms")->check(CLI::PositiveNumber);
  format(beatty, "text or json");

  auto* play = app.add_subcommand("play", "play against the engine in the terminal");
  params(play);
  play->add_option("--pos", opt.pos, "starting position a,b")->required();
  play->add_option("--engine", opt.engine, "engine side: first or second");

  auto* serve = app.add_subcommand("serve", "start the HTTP game service");
  serve->add_option("--host", opt.host, "bind address");
  serve->add_option("--port", opt.port, "TCP port");
  serve->add_option("--pile-cap", opt.pile_cap, "largest starting pile accepted");
  serve->add_option("--log", opt.log_path, "append move logs as JSON lines to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*table) return cmd_table(opt, out);
    if (*cls) return cmd_classify(opt, out);
    if (*verify) return cmd_verify(opt, out);
    if (*beatty) return cmd_beatty(opt, out);
    if (*play) return cmd_play(opt, out, in);
    if (*serve) return cmd_serve(opt, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const CoverageError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  }
  return kUsage;
}

}  // namespace imnim::cli
