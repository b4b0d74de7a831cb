#include "argdial/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "argdial/dialogue.hpp"
#include "argdial/evaluation.hpp"
#include "argdial/formats.hpp"
#include "argdial/library.hpp"
#include "argdial/scheme.hpp"

namespace argdial {

namespace {

constexpr const char* kVersion = "argdial 1.0.0";

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Splits "KEY=VALUE"; the CLI option validators guarantee the '='.
std::pair<std::string, std::string> split_pair(const std::string& item) {
  size_t eq = item.find('=');
  return {item.substr(0, eq), item.substr(eq + 1)};
}

std::string contains_equals(const std::string& item) {
  if (item.find('=') == std::string::npos ||
      item.find('=') == 0)
    return "must have the form KEY=VALUE";
  return {};
}

// Registers every scheme found in the directories named by
// ARGDIAL_SCHEME_PATH (colon separated). Bad files are warned and skipped.
void load_scheme_path(SchemeRegistry& registry, std::ostream& err) {
  const char* env = std::getenv("ARGDIAL_SCHEME_PATH");
  if (!env || !*env) return;
  std::string paths(env);
  size_t start = 0;
  while (start <= paths.size()) {
    size_t colon = paths.find(':', start);
    std::string dir = paths.substr(
        start, colon == std::string::npos ? std::string::npos : colon - start);
    start = colon == std::string::npos ? paths.size() + 1 : colon + 1;
    if (dir.empty()) continue;

    std::error_code ec;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".scheme")
        files.push_back(entry.path());
    }
    if (ec) {
      err << "warning: cannot read scheme directory " << dir << "\n";
      continue;
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::optional<std::string> text = read_file(file.string());
      if (!text) {
        err << "warning: cannot read " << file.string() << "\n";
        continue;
      }
      std::vector<Diagnostic> diagnostics;
      auto schemes = parse_schemes(*text, diagnostics);
      if (!schemes) {
        err << "warning: skipping " << file.string() << ":\n"
            << format_diagnostics(diagnostics);
        continue;
      }
      for (auto& scheme : *schemes) {
        try {
          registry.register_scheme(std::move(scheme));
        } catch (const Error& e) {
          err << "warning: skipping scheme from " << file.string() << ": "
              << e.what() << "\n";
        }
      }
    }
  }
}

void print_open_cqs(std::ostream& out, const std::vector<int>& open) {
  if (open.empty()) {
    out << "-";
    return;
  }
  for (size_t i = 0; i < open.size(); ++i) out << (i ? "," : "") << open[i];
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Argumentation schemes, argument evaluation, and rule-checked "
               "dialogues"};
  app.name("argdial");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  int exit_code = 0;
  SchemeRegistry registry;
  bool registry_loaded = false;
  auto get_registry = [&]() -> SchemeRegistry& {
    if (!registry_loaded) {
      register_builtins(registry);
      load_scheme_path(registry, err);
      registry_loaded = true;
    }
    return registry;
  };

  // schemes list | show
  CLI::App* schemes = app.add_subcommand("schemes", "Inspect known schemes");
  schemes->require_subcommand(1);
  CLI::App* schemes_list =
      schemes->add_subcommand("list", "List scheme ids and shapes");
  schemes_list->callback([&] {
    SchemeRegistry& reg = get_registry();
    for (const auto& id : reg.ids()) {
      Scheme s = reg.lookup(id);
      out << id << " class " << to_string(s.scheme_class) << " qualifier "
          << to_string(s.default_qualifier) << " premises "
          << s.premises.size() << " cqs " << s.cqs.size() << "\n";
    }
  });
  std::string show_id;
  CLI::App* schemes_show =
      schemes->add_subcommand("show", "Print one scheme definition");
  schemes_show->add_option("id", show_id, "Scheme id")->required();
  schemes_show->callback([&] {
    try {
      out << serialize_scheme(get_registry().lookup(show_id));
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      exit_code = 1;
    }
  });

  // validate
  std::string validate_path;
  CLI::App* validate =
      app.add_subcommand("validate", "Check scheme definitions in a file");
  validate->add_option("file", validate_path, "Scheme definition file")
      ->required();
  validate->callback([&] {
    std::optional<std::string> text = read_file(validate_path);
    if (!text) {
      err << "error: cannot read " << validate_path << "\n";
      exit_code = 1;
      return;
    }
    std::vector<Diagnostic> diagnostics;
    auto schemes_in_file =
        parse_schemes(*text, diagnostics, /*structural_only=*/true);
    if (!schemes_in_file) {
      err << format_diagnostics(diagnostics);
      exit_code = 1;
      return;
    }
    bool all_ok = true;
    std::vector<std::string> seen;
    for (const auto& scheme : *schemes_in_file) {
      if (std::find(seen.begin(), seen.end(), scheme.id) != seen.end()) {
        out << scheme.id << " duplicate fail: id already defined\n";
        all_ok = false;
      }
      seen.push_back(scheme.id);
      ValidationReport report = validate_scheme(scheme);
      for (const auto& result : report.results) {
        out << scheme.id << " " << result.condition << " "
            << (result.passed ? "ok" : "fail");
        if (!result.passed && !result.detail.empty())
          out << ": " << result.detail;
        out << "\n";
        all_ok = all_ok && result.passed;
      }
    }
    if (!all_ok) exit_code = 1;
  });

  // instantiate
  std::string inst_scheme_id;
  std::string inst_id;
  std::vector<std::string> inst_binds;
  CLI::App* instantiate =
      app.add_subcommand("instantiate", "Ground a scheme with bindings");
  instantiate->add_option("scheme", inst_scheme_id, "Scheme id")->required();
  instantiate->add_option("--id", inst_id, "Instance id");
  instantiate
      ->add_option("--bind", inst_binds, "Variable binding VAR=TEXT")
      ->check(CLI::Validator(contains_equals, "KEY=VALUE"));
  instantiate->callback([&] {
    try {
      Substitution sub;
      for (const auto& item : inst_binds) {
        auto [var, text] = split_pair(item);
        sub.bind(var, text);
      }
      ArgumentInstance instance =
          instantiate_scheme(get_registry().lookup(inst_scheme_id), sub, inst_id);
      for (const auto& st : instance.statements) {
        out << to_string(st.role) << ": ";
        if (st.role == FormRole::Conclusion) out << "Therefore, ";
        out << st.text << "\n";
      }
      out << "qualifier: " << to_string(instance.qualifier) << "\n";
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      exit_code = 1;
    }
  });

  // evaluate
  std::string eval_path;
  std::string eval_format = "text";
  bool eval_report = false;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Label an argument graph");
  evaluate->add_option("file", eval_path, "Argument graph file")->required();
  evaluate->add_option("--format", eval_format, "Output format")
      ->check(CLI::IsMember({"text", "machine"}));
  evaluate->add_flag("--report", eval_report,
                     "Print only per-argument evaluations");
  evaluate->callback([&] {
    std::optional<std::string> text = read_file(eval_path);
    if (!text) {
      err << "error: cannot read " << eval_path << "\n";
      exit_code = 1;
      return;
    }
    std::vector<Diagnostic> diagnostics;
    auto graph = parse_graph(*text, get_registry(), diagnostics);
    if (!graph) {
      err << format_diagnostics(diagnostics);
      exit_code = 1;
      return;
    }
    if (eval_format == "machine") {
      out << export_graph_machine(*graph);
    } else if (eval_report) {
      for (const auto& [id, inst] : graph->arguments) {
        ArgumentEvaluation ev = evaluate_argument(*graph, id);
        out << id << " label " << to_string(ev.label) << " qualifier "
            << to_string(ev.qualifier) << " open-cqs ";
        print_open_cqs(out, ev.open_cqs);
        out << "\n";
      }
    } else {
      out << export_graph(*graph);
    }
  });

  // simulate
  std::string sim_path;
  int sim_max_turns = 200;
  std::string sim_prop_policy = "replay-script";
  std::string sim_resp_policy = "replay-script";
  const std::vector<std::string> policy_names = {
      "replay-script", "exhaustive-sceptic", "compliant-prover"};
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run a dialogue script to a transcript");
  simulate->add_option("file", sim_path, "Dialogue script file")->required();
  simulate->add_option("--max-turns", sim_max_turns, "Turn budget")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--policy-proponent", sim_prop_policy,
                       "Policy for the proponent")
      ->check(CLI::IsMember(policy_names));
  simulate->add_option("--policy-respondent", sim_resp_policy,
                       "Policy for the respondent")
      ->check(CLI::IsMember(policy_names));
  simulate->callback([&] {
    std::optional<std::string> text = read_file(sim_path);
    if (!text) {
      err << "error: cannot read " << sim_path << "\n";
      exit_code = 1;
      return;
    }
    std::vector<Diagnostic> diagnostics;
    auto document = parse_script(*text, diagnostics);
    if (!document) {
      err << format_diagnostics(diagnostics);
      exit_code = 1;
      return;
    }
    auto moves = resolve_script_moves(*document, get_registry(), diagnostics);
    if (!moves) {
      err << format_diagnostics(diagnostics);
      exit_code = 1;
      return;
    }
    try {
      DialogueState state = new_dialogue(document->type, document->situation,
                                         document->goal, document->participants);
      auto replay_pair = ReplayPolicy::make_pair_for(*moves);
      auto prover_instances = [&](const std::string& who) {
        std::vector<ArgumentInstance> instances;
        for (const auto& move : *moves)
          if (move.kind == MoveKind::Argue && move.speaker == who)
            if (const auto* inst = std::get_if<ArgumentInstance>(&move.payload))
              instances.push_back(*inst);
        return instances;
      };
      auto make_policy = [&](const std::string& name, const std::string& who,
                             std::unique_ptr<ReplayPolicy> replay)
          -> std::unique_ptr<Policy> {
        if (name == "exhaustive-sceptic")
          return std::make_unique<ExhaustiveSceptic>();
        if (name == "compliant-prover")
          return std::make_unique<CompliantProver>(prover_instances(who));
        return replay;
      };
      std::unique_ptr<Policy> prop = make_policy(
          sim_prop_policy, state.proponent(), std::move(replay_pair.first));
      std::unique_ptr<Policy> resp = make_policy(
          sim_resp_policy, state.respondent(), std::move(replay_pair.second));
      Transcript transcript =
          run_simulation(std::move(state), *prop, *resp, sim_max_turns);
      out << render_transcript(transcript);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      exit_code = 1;
    }
  });

  // shift-report
  std::string report_path;
  CLI::App* report = app.add_subcommand(
      "shift-report", "Extract the shift log from a transcript");
  report->add_option("file", report_path, "Transcript file")->required();
  report->callback([&] {
    std::optional<std::string> text = read_file(report_path);
    if (!text) {
      err << "error: cannot read " << report_path << "\n";
      exit_code = 1;
      return;
    }
    std::vector<Diagnostic> diagnostics;
    auto entries = parse_transcript_shifts(*text, diagnostics);
    if (!entries) {
      err << format_diagnostics(diagnostics);
      exit_code = 1;
      return;
    }
    for (const auto& e : *entries) {
      out << "shift " << to_string(e.mode) << " " << to_string(e.from)
          << " -> " << to_string(e.to) << " turn " << e.turn;
      if (e.degraded) out << " degraded";
      out << "\n";
    }
  });

  // localize
  std::string loc_source;
  std::string loc_new_id;
  std::vector<std::string> loc_map;
  CLI::App* localize =
      app.add_subcommand("localize", "Derive a scheme by renaming terms");
  localize->add_option("scheme", loc_source, "Source scheme id")->required();
  localize->add_option("--as", loc_new_id, "Id for the derived scheme")
      ->required();
  localize->add_option("--map", loc_map, "Replacement SOURCE=TARGET")
      ->required()
      ->check(CLI::Validator(contains_equals, "KEY=VALUE"));
  localize->callback([&] {
    try {
      TermMap map;
      for (const auto& item : loc_map) {
        auto [from, to] = split_pair(item);
        map.replacements[from] = to;
      }
      LocalizeResult result =
          get_registry().localize(loc_source, map, loc_new_id);
      for (const auto& warning : result.warnings)
        err << "warning: " << warning << "\n";
      out << serialize_scheme(result.scheme);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      exit_code = 1;
    }
  });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  return exit_code;
}

}  // namespace argdial
