// Command-line front end: design, check, bound, and red-team test decks.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latdeck/latdeck.hpp"

namespace {

using namespace latdeck;

RuleSet parse_rules(const std::string& name) {
  if (name == "michigan") return RuleSet::michigan();
  if (name == "none") return RuleSet::none();
  throw CLI::ValidationError("--rules", "expected 'michigan' or 'none'");
}

Improvements parse_improvements(const std::vector<int>& disabled) {
  Improvements imp = Improvements::all();
  for (int k : disabled) {
    switch (k) {
      case 1: imp.reduce_variables = false; break;
      case 2: imp.within_contest_ordering = false; break;
      case 3: imp.lexicographic_contests = false; break;
      case 4: imp.minimal_cuts = false; break;
      case 5: imp.merge_noncompetitive = false; break;
      default: throw CLI::ValidationError("--no-improvement", "index must be 1..5");
    }
  }
  return imp;
}

int run_check(const std::string& style_path, const std::string& deck_path, bool minimal,
              bool brute, double time_limit) {
  const BallotStyle style = style_from_json(read_json_file(style_path));
  const Deck deck = deck_from_json(read_json_file(deck_path));
  const CheckReport report = brute ? brute_force_check(style, deck)
                                   : find_undetected_swap(style, deck, minimal, time_limit);
  if (report.secure()) {
    std::cout << "SECURE\n";
    return 0;
  }
  std::cout << "VULNERABLE\n" << swap_to_json(*report.witness).dump(2) << "\n";
  return 3;
}

int run_solve(const std::string& style_path, const std::string& rules_name,
              const std::string& out_path, const std::vector<int>& disabled,
              double time_limit, const std::string& trace_path,
              const std::string& overvote_ballot, bool assume_alert) {
  const BallotStyle style = style_from_json(read_json_file(style_path));
  RuleSet rules = parse_rules(rules_name);
  if (overvote_ballot == "full") {
    rules.append_full_overvote_ballot = true;
  } else if (overvote_ballot == "exact") {
    rules.append_exact_overvote_ballot = true;
    rules.overvote_alert_assumed = assume_alert;
  } else if (!overvote_ballot.empty()) {
    throw CLI::ValidationError("--overvote-ballot", "expected 'full' or 'exact'");
  }
  SolveOptions options;
  options.time_limit_seconds = time_limit;
  const SolveResult result = solve_style(style, rules, parse_improvements(disabled), options);
  const json out = solve_result_to_json(style, result);
  if (out_path.empty())
    std::cout << out.dump(2) << "\n";
  else
    write_text_file(out_path, out.dump(2) + "\n");
  if (!trace_path.empty()) write_text_file(trace_path, trace_to_json(result).dump(2) + "\n");
  std::cerr << "deck length " << result.deck_length << " after " << result.iterations
            << " iterations ("
            << (result.certified() ? "certified optimal" : "time limit, partial") << ")\n";
  return result.certified() ? 0 : 2;
}

int run_bound(const std::string& style_path, const std::string& method) {
  const BallotStyle style = style_from_json(read_json_file(style_path));
  Deck deck;
  if (method == "triangular")
    deck = triangular_deck(style);
  else if (method == "distinct")
    deck = distinct_votes_deck(style);
  else
    throw CLI::ValidationError("--method", "expected 'triangular' or 'distinct'");
  std::cout << deck_to_json(deck, style.style_id()).dump(2) << "\n";
  std::cerr << "bound deck length " << deck.size() << "\n";
  return 0;
}

int run_redteam(const std::string& style_path, const std::string& sigma_path,
                const std::string& rules_name) {
  const BallotStyle style = style_from_json(read_json_file(style_path));
  const Swap sigma = swap_from_json(read_json_file(sigma_path));
  Deck deck;
  if (rules_name == "none" || rules_name == "one-vote")
    deck = hide_any_swap(style, sigma);
  else if (rules_name == "distinct")
    deck = hide_cross_contest_swap(style, sigma);
  else
    throw CLI::ValidationError("--rules", "expected 'none', 'one-vote', or 'distinct'");

  json out = deck_to_json(deck, style.style_id());
  const auto counts = mark_counts(style, deck);
  bool one_vote = true;
  for (int v : counts) one_vote = one_vote && v >= 1;
  bool distinct = true;
  for (const auto& contest : style.contests())
    for (std::size_t a = 0; a < contest.candidates.size(); ++a)
      for (std::size_t b = a + 1; b < contest.candidates.size(); ++b)
        distinct = distinct &&
                   counts[static_cast<std::size_t>(contest.candidates[a] - 1)] !=
                       counts[static_cast<std::size_t>(contest.candidates[b] - 1)];
  out["rules_satisfied"] = {{"at_least_one_vote", one_vote},
                            {"distinct_within_contest", distinct}};
  out["hidden_swap"] = sigma.image_vector();
  out["hidden"] = tabulate_swapped(style, deck, sigma) == tabulate_correct(style, deck);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_batch(const std::string& dir, const std::string& rules_name, const std::string& out_dir,
              int jobs, double per_style_limit) {
  namespace fs = std::filesystem;
  std::vector<BallotStyle> styles;
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) styles.push_back(style_from_json(read_json_file(p.string())));
  if (styles.empty()) {
    std::cerr << "no .json styles found in " << dir << "\n";
    return 1;
  }

  BatchOptions options;
  options.jobs = jobs;
  options.per_style_time_limit = per_style_limit;
  const BatchResult batch = batch_solve(styles, parse_rules(rules_name), options);

  fs::create_directories(out_dir);
  for (const auto& entry : batch.entries) {
    if (!entry.ok) continue;
    const auto it = std::find_if(styles.begin(), styles.end(), [&](const BallotStyle& s) {
      return s.style_id() == entry.style_id;
    });
    write_text_file((fs::path(out_dir) / (entry.style_id + ".deck.json")).string(),
                    solve_result_to_json(*it, entry.result).dump(2) + "\n");
  }
  write_text_file((fs::path(out_dir) / "summary.csv").string(), batch.to_csv());

  int failures = 0;
  for (const auto& entry : batch.entries)
    if (!entry.ok || !entry.result.certified()) ++failures;
  std::cerr << batch.entries.size() << " styles: " << batch.full_solves << " solved, "
            << batch.reused << " reused, " << batch.translated << " translated";
  if (failures) std::cerr << ", " << failures << " unresolved";
  std::cerr << "\n";
  return failures == 0 ? 0 : 2;
}

int run_bench(int experiment, int max_c, const std::string& ablate, const std::string& out_path) {
  std::ostringstream csv;
  csv << "experiment,contests,configuration,B_star,iterations,wall_ms\n";
  std::vector<std::pair<std::string, Improvements>> configs{{"all", Improvements::all()}};
  if (ablate == "all") {
    for (int k = 1; k <= 5; ++k)
      configs.emplace_back("no-" + std::to_string(k), Improvements::all_except(k));
  } else if (!ablate.empty()) {
    const int k = std::stoi(ablate);
    configs.emplace_back("no-" + ablate, Improvements::all_except(k));
  }
  RuleSet rules;
  rules.at_least_one_vote = true;  // the benchmark convention
  for (int c = 2; c <= max_c; ++c) {
    const BallotStyle style = generate_experiment(experiment, c);
    for (const auto& [label, improvements] : configs) {
      const auto t0 = std::chrono::steady_clock::now();
      const SolveResult result = solve_style(style, rules, improvements);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();
      csv << experiment << ',' << c << ',' << label << ',' << result.deck_length << ','
          << result.iterations << ',' << static_cast<long long>(ms) << '\n';
      std::cerr << "experiment " << experiment << " C=" << c << " [" << label
                << "] B*=" << result.deck_length << " iterations=" << result.iterations
                << " (" << static_cast<long long>(ms) << " ms)\n";
    }
  }
  if (out_path.empty())
    std::cout << csv.str();
  else
    write_text_file(out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-length test decks that expose candidate/target swaps"};
  app.require_subcommand(1);

  std::string style_path, deck_path, sigma_path, out_path, trace_path, rules_name = "michigan";
  std::string method = "distinct", overvote_ballot, ablate, dir, out_dir = "results";
  bool minimal = false, brute = false, assume_alert = false;
  double time_limit = 0.0, per_style_limit = 0.0;
  int jobs = 1, experiment = 1, max_c = 12;

  auto* check = app.add_subcommand("check", "verify a deck against every possible swap");
  check->add_option("--style", style_path, "ballot style JSON")->required();
  check->add_option("--deck", deck_path, "deck JSON")->required();
  check->add_flag("--minimal", minimal, "prefer a witness moving the fewest candidates");
  check->add_flag("--brute-force", brute, "enumerate all bijections instead of solving");
  check->add_option("--time-limit", time_limit, "seconds");

  auto* solve = app.add_subcommand("solve", "design a minimum-length test deck");
  solve->add_option("--style", style_path, "ballot style JSON")->required();
  solve->add_option("--rules", rules_name, "michigan|none");
  solve->add_option("--out", out_path, "output deck JSON path");
  std::vector<int> disabled;
  solve->add_option("--no-improvement", disabled, "disable an improvement (1..5), repeatable");
  solve->add_option("--time-limit", time_limit, "seconds");
  solve->add_option("--trace", trace_path, "write the iteration trace JSON here");
  solve->add_option("--overvote-ballot", overvote_ballot,
                    "append an overvoted ballot: full|exact");
  solve->add_flag("--assume-overvote-alert", assume_alert,
                  "acknowledge the alert assumption required by 'exact'");

  auto* bound = app.add_subcommand("bound", "closed-form feasible decks");
  bound->add_option("--style", style_path, "ballot style JSON")->required();
  bound->add_option("--method", method, "triangular|distinct");

  auto* redteam = app.add_subcommand("redteam", "construct a deliberately flawed deck");
  redteam->add_option("--style", style_path, "ballot style JSON")->required();
  redteam->add_option("--sigma", sigma_path, "swap JSON to hide")->required();
  redteam->add_option("--rules", rules_name, "none|one-vote|distinct")->required();

  auto* batch = app.add_subcommand("batch", "solve a directory of styles");
  batch->add_option("--dir", dir, "directory of style JSON files")->required();
  batch->add_option("--rules", rules_name, "michigan|none");
  batch->add_option("--out", out_dir, "output directory");
  batch->add_option("--jobs", jobs, "concurrent solves");
  batch->add_option("--time-limit", per_style_limit, "per-style seconds");

  auto* bench = app.add_subcommand("bench", "synthetic benchmark families");
  bench->add_option("--experiment", experiment, "1|2|3")->required();
  bench->add_option("--max-c", max_c, "largest contest count");
  bench->add_option("--ablate", ablate, "improvement to disable (1..5) or 'all'");
  bench->add_option("--out", out_path, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(style_path, deck_path, minimal, brute, time_limit);
    if (solve->parsed())
      return run_solve(style_path, rules_name, out_path, disabled, time_limit, trace_path,
                       overvote_ballot, assume_alert);
    if (bound->parsed()) return run_bound(style_path, method);
    if (redteam->parsed()) return run_redteam(style_path, sigma_path, rules_name);
    if (batch->parsed()) return run_batch(dir, rules_name, out_dir, jobs, per_style_limit);
    if (bench->parsed()) return run_bench(experiment, max_c, ablate, out_path);
  } catch (const latdeck::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
