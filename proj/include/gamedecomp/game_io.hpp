#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gamedecomp/game.hpp"
#include "json.hpp"

namespace gamedecomp {

enum class ParseErrorKind { Malformed, PayoffCountMismatch, SpaceCapExceeded };

/// Failure to read a game document. `kind()` distinguishes the causes.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what) : std::runtime_error(prefix(kind) + what), kind_(kind) {}
  ParseErrorKind kind() const { return kind_; }

 private:
  static std::string prefix(ParseErrorKind kind) {
    switch (kind) {
      case ParseErrorKind::Malformed: return "malformed document: ";
      case ParseErrorKind::PayoffCountMismatch: return "payoff count mismatch: ";
      case ParseErrorKind::SpaceCapExceeded: return "space cap exceeded: ";
    }
    return {};
  }
  ParseErrorKind kind_;
};

/// Plain integer when it fits in 64 bits, "p/q" (or "p") string otherwise.
inline nlohmann::json rational_to_json(const Rational& r) {
  if (r.is_integer() && r.numerator().fits_slong_p()) return r.numerator().get_si();
  return r.str();
}

/// Accepts JSON integers and strings holding integers, "p/q" or finite
/// decimals. JSON floating-point numbers are rejected since their value is
/// not exact.
inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(mpz_class(std::to_string(j.get<std::uint64_t>())));
    return Rational(j.get<std::int64_t>());
  }
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw std::invalid_argument("payoff entries must be integers or strings, got " + j.dump());
}

inline Game game_from_json(const nlohmann::json& doc, std::size_t cap = kDefaultSpaceCap) {
  using K = ParseErrorKind;
  if (!doc.is_object()) throw ParseError(K::Malformed, "top level must be an object");
  for (const char* key : {"players", "strategies", "payoffs"})
    if (!doc.contains(key)) throw ParseError(K::Malformed, std::string("missing key \"") + key + "\"");
  for (const auto& [key, _] : doc.items())
    if (key != "players" && key != "strategies" && key != "payoffs" && key != "name")
      throw ParseError(K::Malformed, "unknown key \"" + key + "\"");

  const auto& players = doc.at("players");
  if (!players.is_number_integer() || players.get<std::int64_t>() < 1)
    throw ParseError(K::Malformed, "\"players\" must be a positive integer");
  const auto& strategies = doc.at("strategies");
  if (!strategies.is_array()) throw ParseError(K::Malformed, "\"strategies\" must be an array");
  std::vector<std::size_t> counts;
  for (const auto& k : strategies) {
    if (!k.is_number_integer() || k.get<std::int64_t>() < 1)
      throw ParseError(K::Malformed, "strategy counts must be positive integers");
    counts.push_back(k.get<std::size_t>());
  }
  if (counts.size() != players.get<std::size_t>())
    throw ParseError(K::Malformed, "\"players\" is " + players.dump() + " but " + std::to_string(counts.size()) +
                                       " strategy counts were given");

  std::optional<GameSpace> space;
  try {
    space.emplace(counts, cap);
  } catch (const SpaceCapExceeded& e) {
    throw ParseError(K::SpaceCapExceeded, e.what());
  }

  std::optional<std::string> name;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ParseError(K::Malformed, "\"name\" must be a string");
    name = doc.at("name").get<std::string>();
  }

  const auto& payoffs = doc.at("payoffs");
  if (!payoffs.is_array()) throw ParseError(K::Malformed, "\"payoffs\" must be an array");
  if (payoffs.size() != space->players())
    throw ParseError(K::PayoffCountMismatch, std::to_string(payoffs.size()) + " payoff rows for " +
                                                 std::to_string(space->players()) + " players");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    const auto& row = payoffs[i];
    if (!row.is_array()) throw ParseError(K::Malformed, "payoff row " + std::to_string(i + 1) + " is not an array");
    if (row.size() != space->profiles())
      throw ParseError(K::PayoffCountMismatch, "player " + std::to_string(i + 1) + " has " +
                                                   std::to_string(row.size()) + " payoffs, expected " +
                                                   std::to_string(space->profiles()));
    rows.emplace_back();
    for (const auto& entry : row) {
      try {
        rows.back().push_back(rational_from_json(entry));
      } catch (const std::exception& e) {
        throw ParseError(K::Malformed, "player " + std::to_string(i + 1) + ": " + e.what());
      }
    }
  }
  return Game(*space, std::move(rows), std::move(name));
}

inline Game parse_game(std::string_view text, std::size_t cap = kDefaultSpaceCap) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(ParseErrorKind::Malformed, e.what());
  }
  return game_from_json(doc, cap);
}

inline nlohmann::json game_to_json(const Game& g) {
  nlohmann::json doc = nlohmann::json::object();
  if (g.name()) doc["name"] = *g.name();
  doc["players"] = g.space().players();
  doc["strategies"] = g.space().strategy_counts();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : g.payoff_rows()) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(rational_to_json(x));
    rows.push_back(std::move(r));
  }
  doc["payoffs"] = std::move(rows);
  return doc;
}

inline std::string serialize_game(const Game& g) { return game_to_json(g).dump(2) + "\n"; }

}  // namespace gamedecomp
