#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latdeck/ballot.hpp"
#include "latdeck/errors.hpp"
#include "latdeck/solver.hpp"
#include "latdeck/swap.hpp"

namespace latdeck {

using json = nlohmann::json;

// Ballot style JSON:
// {"style_id": str,
//  "contests": [{"contest_id": str, "candidates": [str,...], "max_votes": int}, ...]}
// Global candidate indices are assigned in listing order, starting at 1.

inline json style_to_json(const BallotStyle& style) {
  json contests = json::array();
  for (const auto& contest : style.contests()) {
    json names = json::array();
    for (int i : contest.candidates) names.push_back(style.candidate_name(i));
    contests.push_back({{"contest_id", contest.contest_id},
                        {"candidates", names},
                        {"max_votes", contest.max_votes}});
  }
  return {{"style_id", style.style_id()}, {"contests", contests}};
}

inline BallotStyle style_from_json(const json& j) {
  try {
    std::vector<Contest> contests;
    std::vector<std::string> names;
    int next = 1;
    for (const auto& jc : j.at("contests")) {
      Contest contest;
      contest.contest_id = jc.at("contest_id").get<std::string>();
      for (const auto& name : jc.at("candidates")) {
        names.push_back(name.get<std::string>());
        contest.candidates.push_back(next++);
      }
      contest.max_votes = jc.at("max_votes").get<int>();
      contests.push_back(std::move(contest));
    }
    return BallotStyle(j.at("style_id").get<std::string>(), std::move(contests),
                       std::move(names));
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("malformed ballot style JSON: ") + e.what());
  }
}

// Deck JSON: {"style_id": str, "ballots": [[candidate_index, ...], ...]},
// candidate indices one-based.

inline json deck_to_json(const Deck& deck, const std::string& style_id) {
  json ballots = json::array();
  for (const auto& ballot : deck.ballots) ballots.push_back(ballot.marks);
  return {{"style_id", style_id}, {"ballots", ballots}};
}

inline Deck deck_from_json(const json& j) {
  try {
    Deck deck;
    for (const auto& jb : j.at("ballots"))
      deck.ballots.emplace_back(jb.get<std::vector<int>>());
    return deck;
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("malformed deck JSON: ") + e.what());
  }
}

// Deck CSV: header row of candidate ids, one 0/1 row per ballot.

inline std::string deck_to_csv(const BallotStyle& style, const Deck& deck) {
  std::ostringstream out;
  for (int i = 1; i <= style.candidate_count(); ++i) {
    if (i > 1) out << ',';
    out << style.candidate_name(i);
  }
  out << '\n';
  for (const auto& ballot : deck.ballots) {
    for (int i = 1; i <= style.candidate_count(); ++i) {
      if (i > 1) out << ',';
      out << (ballot.contains(i) ? '1' : '0');
    }
    out << '\n';
  }
  return out.str();
}

inline Deck deck_from_csv(const BallotStyle& style, std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInputError("deck CSV is empty");
  Deck deck;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<int> marks;
    std::stringstream cells(line);
    std::string cell;
    int column = 0;
    while (std::getline(cells, cell, ',')) {
      ++column;
      if (column > style.candidate_count())
        throw InvalidInputError("deck CSV row " + std::to_string(row) + " has too many cells");
      if (cell == "1")
        marks.push_back(column);
      else if (cell != "0")
        throw InvalidInputError("deck CSV row " + std::to_string(row) +
                                " contains a cell that is not 0 or 1");
    }
    if (column != style.candidate_count())
      throw InvalidInputError("deck CSV row " + std::to_string(row) + " has too few cells");
    deck.ballots.emplace_back(std::move(marks));
  }
  return deck;
}

// Swap JSON: {"sigma": [target_for_candidate_1, ..., target_for_candidate_N]},
// one-based.

inline json swap_to_json(const Swap& sigma) { return {{"sigma", sigma.image_vector()}}; }

inline Swap swap_from_json(const json& j) {
  try {
    return Swap(j.at("sigma").get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("malformed swap JSON: ") + e.what());
  }
}

/// Solver output: the deck, its expected tallies (including any appended
/// rule ballots, which are listed separately), and solve metadata.
inline json solve_result_to_json(const BallotStyle& style, const SolveResult& result) {
  json out = deck_to_json(result.deck, style.style_id());
  json appended = json::array();
  for (const auto& ballot : result.appended_ballots) appended.push_back(ballot.marks);
  out["appended_ballots"] = appended;
  const Tally expected = tabulate_correct(style, result.full_deck());
  out["expected_tally"] = expected.totals;
  out["deck_length"] = result.deck_length;
  out["iterations"] = result.iterations;
  out["certificate"] = result.certified() ? "CERTIFIED_OPTIMAL" : "TIME_LIMIT_PARTIAL";
  out["early_halt"] = result.early_halt;
  return out;
}

inline json trace_to_json(const SolveResult& result) {
  json entries = json::array();
  for (const auto& entry : result.trace) {
    json je = {{"phase", entry.phase == TraceEntry::Phase::kMaster ? "master" : "cut"},
               {"iteration", entry.iteration},
               {"deck_length", entry.deck_length},
               {"wall_ms", entry.wall_ms}};
    if (entry.phase == TraceEntry::Phase::kMaster)
      je["status"] = entry.feasible ? "feasible" : "infeasible";
    else
      je["status"] = entry.feasible ? "cut-found" : "secure";
    if (entry.cut) je["cut"] = entry.cut->image_vector();
    entries.push_back(std::move(je));
  }
  return {{"iterations", result.iterations}, {"events", entries}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInputError("cannot parse " + path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write file: " + path);
  out << text;
}

}  // namespace latdeck
