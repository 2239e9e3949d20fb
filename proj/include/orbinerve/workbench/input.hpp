#pragma once

// Workbench input documents.
//
//   group <name> { elements <id>+ ; table <row> / <row> / ... }
//   action <name> { group <ref> ; points <id>+ ; act <element> : <p>-><q> ... }
//   groupoid <name> { objects <id>+ ; mor <id> : <obj> -> <obj> ; id <obj> = <mor> ; comp <f> <g> = <h> }
//   sectors <name> { sector age <p/q> betti <ints> ; ... }
//   options { ring Z|Q ; cap <n> }
//
// `#` starts a comment. Statements inside braces are separated by `;`.
// Compositions with an identity may be left out of a groupoid listing.

#include "orbinerve/chen_ruan.hpp"
#include "orbinerve/groupoid.hpp"
#include "orbinerve/homology.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbinerve::workbench {

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
};

class InputError : public std::runtime_error {
 public:
  InputError(const char* kind, Location at, const std::string& message)
      : std::runtime_error(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + kind + ": " + message),
        at_(at) {}
  Location where() const noexcept { return at_; }

 private:
  Location at_;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(Location at, const std::string& m) : InputError("syntax error", at, m) {}
};
class DuplicateNameError : public InputError {
 public:
  DuplicateNameError(Location at, const std::string& m) : InputError("duplicate name", at, m) {}
};
class UnresolvedReferenceError : public InputError {
 public:
  UnresolvedReferenceError(Location at, const std::string& m) : InputError("unresolved reference", at, m) {}
};
class ValidatorError : public InputError {
 public:
  ValidatorError(Location at, const std::string& m) : InputError("validation failed", at, m) {}
};

enum class EntityKind { kGroup, kAction, kGroupoid, kSectors };

inline const char* kind_name(EntityKind k) {
  switch (k) {
    case EntityKind::kGroup: return "group";
    case EntityKind::kAction: return "action";
    case EntityKind::kGroupoid: return "groupoid";
    case EntityKind::kSectors: return "sectors";
  }
  return "?";
}

struct Entity {
  EntityKind kind = EntityKind::kGroup;
  std::string name;
  Location at;
  FiniteGroupoid groupoid;           // groups, actions and groupoids
  std::vector<SectorData> sectors;   // sector lists
  bool builtin = false;

  bool is_groupoid() const { return kind != EntityKind::kSectors; }
};

struct Options {
  std::optional<Ring> ring;
  std::optional<std::size_t> cap;
};

struct WorkbenchInput {
  std::vector<Entity> entities;  // in definition order
  Options options;

  const Entity* find(std::string_view name) const {
    for (const auto& e : entities)
      if (e.name == name) return &e;
    return nullptr;
  }
};

namespace detail {

struct Token {
  std::string text;
  Location at;
};

inline bool is_punct(char c) { return c == '{' || c == '}' || c == ';' || c == ':' || c == '=' || c == '/'; }

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  Location at;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++at.line;
        at.column = 1;
      } else {
        ++at.column;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (src.substr(i, 2) == "->") {
      out.push_back({"->", at});
      advance(2);
    } else if (is_punct(c)) {
      out.push_back({std::string(1, c), at});
      advance(1);
    } else {
      const Location start = at;
      std::string word;
      while (i < src.size() && !std::isspace(static_cast<unsigned char>(src[i])) && !is_punct(src[i]) &&
             src[i] != '#' && src.substr(i, 2) != "->") {
        word += src[i];
        advance(1);
      }
      out.push_back({word, start});
    }
  }
  out.push_back({"", at});  // end marker
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, const WorkbenchInput* context) : toks_(tokenize(src)), context_(context) {}

  WorkbenchInput parse() {
    WorkbenchInput in;
    std::map<std::string, Location> seen;
    while (!at_end()) {
      const Token head = next();
      if (head.text == "options") {
        parse_options(in.options);
        continue;
      }
      Entity e;
      e.at = head.at;
      if (head.text == "group") e.kind = EntityKind::kGroup;
      else if (head.text == "action") e.kind = EntityKind::kAction;
      else if (head.text == "groupoid") e.kind = EntityKind::kGroupoid;
      else if (head.text == "sectors") e.kind = EntityKind::kSectors;
      else throw SyntaxError(head.at, "expected group, action, groupoid, sectors or options, found '" + head.text + "'");
      const Token name = word("entity name");
      e.name = name.text;
      if (auto it = seen.find(e.name); it != seen.end())
        throw DuplicateNameError(name.at, "'" + e.name + "' already defined at line " + std::to_string(it->second.line));
      seen[e.name] = name.at;
      expect("{");
      switch (e.kind) {
        case EntityKind::kGroup: e.groupoid = group_as(parse_group_body(), e); break;
        case EntityKind::kAction: e.groupoid = parse_action_body(in, e); break;
        case EntityKind::kGroupoid: e.groupoid = parse_groupoid_body(e); break;
        case EntityKind::kSectors: e.sectors = parse_sectors_body(); break;
      }
      in.entities.push_back(std::move(e));
    }
    return in;
  }

 private:
  struct GroupBody {
    GroupTable table;
    Location at;
  };

  bool at_end() const { return toks_[pos_].text.empty(); }
  const Token& peek() const { return toks_[pos_]; }
  Token next() {
    const Token t = toks_[pos_];
    if (!at_end()) ++pos_;
    return t;
  }
  bool accept(std::string_view s) {
    if (peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view s) {
    if (!accept(s)) throw SyntaxError(peek().at, "expected '" + std::string(s) + "', found " + shown(peek()));
  }
  static std::string shown(const Token& t) { return t.text.empty() ? "end of input" : "'" + t.text + "'"; }
  static bool is_word(const Token& t) { return !t.text.empty() && t.text != "->" && !is_punct(t.text[0]); }
  Token word(const char* what) {
    if (!is_word(peek())) throw SyntaxError(peek().at, std::string("expected ") + what + ", found " + shown(peek()));
    return next();
  }
  std::vector<Token> words_until_separator() {
    std::vector<Token> out;
    while (is_word(peek())) out.push_back(next());
    return out;
  }
  // `;` between statements, optional before `}`; true once `}` is consumed
  bool end_statement() {
    if (accept("}")) return true;
    expect(";");
    return accept("}");
  }
  std::size_t number(const Token& t) {
    if (t.text.empty() || t.text.find_first_not_of("0123456789") != std::string::npos)
      throw SyntaxError(t.at, "expected a nonnegative integer, found '" + t.text + "'");
    if (t.text.size() > 9) throw SyntaxError(t.at, "number '" + t.text + "' is too large");
    return std::stoul(t.text);
  }

  void parse_options(Options& o) {
    expect("{");
    if (accept("}")) return;
    for (;;) {
      const Token key = word("option name");
      if (key.text == "ring") {
        const Token v = word("Z or Q");
        if (v.text == "Z") o.ring = Ring::kIntegers;
        else if (v.text == "Q") o.ring = Ring::kRationals;
        else throw SyntaxError(v.at, "ring must be Z or Q");
      } else if (key.text == "cap") {
        o.cap = number(next());
      } else {
        throw SyntaxError(key.at, "unknown option '" + key.text + "'");
      }
      if (end_statement()) return;
    }
  }

  GroupBody parse_group_body() {
    GroupBody b;
    b.at = peek().at;
    std::map<std::string, std::uint32_t> index;
    bool have_elements = false;
    bool have_table = false;
    for (;;) {
      const Token key = word("'elements' or 'table'");
      if (key.text == "elements") {
        for (const auto& t : words_until_separator()) {
          if (index.count(t.text)) throw DuplicateNameError(t.at, "element '" + t.text + "' listed twice");
          index[t.text] = static_cast<std::uint32_t>(b.table.names.size());
          b.table.names.push_back(t.text);
        }
        if (b.table.names.empty()) throw SyntaxError(key.at, "a group needs at least one element");
        have_elements = true;
      } else if (key.text == "table") {
        if (!have_elements) throw SyntaxError(key.at, "'elements' must come before 'table'");
        for (;;) {
          std::vector<std::uint32_t> row;
          const Location row_at = peek().at;
          for (const auto& t : words_until_separator()) {
            auto it = index.find(t.text);
            if (it == index.end()) throw UnresolvedReferenceError(t.at, "unknown element '" + t.text + "'");
            row.push_back(it->second);
          }
          if (row.size() != b.table.names.size())
            throw ValidatorError(row_at, "table row " + std::to_string(b.table.product.size() + 1) + " has " +
                                                std::to_string(row.size()) + " entries, expected " +
                                                std::to_string(b.table.names.size()));
          b.table.product.push_back(std::move(row));
          if (!accept("/")) break;
        }
        if (b.table.product.size() != b.table.names.size())
          throw ValidatorError(key.at, "table has " + std::to_string(b.table.product.size()) + " rows, expected " +
                                           std::to_string(b.table.names.size()));
        have_table = true;
      } else {
        throw SyntaxError(key.at, "unknown group statement '" + key.text + "'");
      }
      if (end_statement()) break;
    }
    if (!have_table) throw SyntaxError(b.at, "group has no table");
    return b;
  }

  static FiniteGroupoid group_as(const GroupBody& b, const Entity& e) {
    try {
      return group_as_groupoid(b.table);
    } catch (const AxiomError& err) {
      throw ValidatorError(e.at, "group '" + e.name + "' fails " + err.axiom() + ": " + err.what());
    } catch (const StructuralError& err) {
      throw ValidatorError(e.at, "group '" + e.name + "': " + err.what());
    }
  }

  FiniteGroupoid parse_action_body(const WorkbenchInput& in, const Entity& e) {
    const Entity* group = nullptr;
    GroupAction action;
    std::map<std::string, std::uint32_t> point;
    std::vector<std::pair<Token, std::vector<std::pair<Token, Token>>>> acts;
    for (;;) {
      const Token key = word("'group', 'points' or 'act'");
      if (key.text == "group") {
        const Token ref = word("group name");
        group = in.find(ref.text);
        if (group == nullptr && context_ != nullptr) group = context_->find(ref.text);
        if (group == nullptr) throw UnresolvedReferenceError(ref.at, "no group named '" + ref.text + "'");
        if (group->kind != EntityKind::kGroup)
          throw UnresolvedReferenceError(ref.at, "'" + ref.text + "' is a " + kind_name(group->kind) + ", not a group");
      } else if (key.text == "points") {
        for (const auto& t : words_until_separator()) {
          if (point.count(t.text)) throw DuplicateNameError(t.at, "point '" + t.text + "' listed twice");
          point[t.text] = static_cast<std::uint32_t>(action.point_names.size());
          action.point_names.push_back(t.text);
        }
      } else if (key.text == "act") {
        const Token element = word("group element");
        expect(":");
        std::vector<std::pair<Token, Token>> pairs;
        while (is_word(peek())) {
          const Token from = next();
          expect("->");
          pairs.push_back({from, word("point")});
        }
        acts.push_back({element, pairs});
      } else {
        throw SyntaxError(key.at, "unknown action statement '" + key.text + "'");
      }
      if (end_statement()) break;
    }
    if (group == nullptr) throw SyntaxError(e.at, "action '" + e.name + "' names no group");
    if (action.point_names.empty()) throw SyntaxError(e.at, "action '" + e.name + "' has no points");
    const FiniteGroupoid& g = group->groupoid;
    const auto np = static_cast<std::uint32_t>(action.point_names.size());
    action.image.assign(g.morphism_count(), std::vector<std::uint32_t>(np));
    for (auto& row : action.image)
      for (std::uint32_t p = 0; p < np; ++p) row[p] = p;
    auto resolve_point = [&](const Token& t) {
      auto it = point.find(t.text);
      if (it == point.end()) throw UnresolvedReferenceError(t.at, "unknown point '" + t.text + "'");
      return it->second;
    };
    for (const auto& [element, pairs] : acts) {
      MorphismId m = kNoMorphism;
      for (MorphismId k = 0; k < g.morphism_count(); ++k)
        if (g.morphism_name(k) == element.text) m = k;
      if (m == kNoMorphism)
        throw UnresolvedReferenceError(element.at, "group '" + group->name + "' has no element '" + element.text + "'");
      for (const auto& [from, to] : pairs) action.image[m][resolve_point(from)] = resolve_point(to);
    }
    try {
      return action_groupoid(g, action);
    } catch (const AxiomError& err) {
      throw ValidatorError(e.at, "action '" + e.name + "' is not a right action: " + err.what());
    }
  }

  FiniteGroupoid parse_groupoid_body(const Entity& e) {
    FiniteGroupoid::Tables t;
    std::map<std::string, std::uint32_t> object;
    std::map<std::string, std::uint32_t> morphism;
    std::vector<std::tuple<Token, Token, Token>> comps;
    std::vector<std::pair<Token, Token>> ids;
    auto resolve = [](const std::map<std::string, std::uint32_t>& m, const Token& tok, const char* what) {
      auto it = m.find(tok.text);
      if (it == m.end()) throw UnresolvedReferenceError(tok.at, std::string("unknown ") + what + " '" + tok.text + "'");
      return it->second;
    };
    for (;;) {
      const Token key = word("'objects', 'mor', 'id' or 'comp'");
      if (key.text == "objects") {
        for (const auto& tok : words_until_separator()) {
          if (object.count(tok.text)) throw DuplicateNameError(tok.at, "object '" + tok.text + "' listed twice");
          object[tok.text] = static_cast<std::uint32_t>(t.object_names.size());
          t.object_names.push_back(tok.text);
        }
      } else if (key.text == "mor") {
        const Token name = word("morphism name");
        if (morphism.count(name.text)) throw DuplicateNameError(name.at, "morphism '" + name.text + "' declared twice");
        expect(":");
        const Token from = word("source object");
        expect("->");
        const Token to = word("target object");
        morphism[name.text] = static_cast<std::uint32_t>(t.morphism_names.size());
        t.morphism_names.push_back(name.text);
        t.source.push_back(resolve(object, from, "object"));
        t.target.push_back(resolve(object, to, "object"));
      } else if (key.text == "id") {
        const Token obj = word("object");
        expect("=");
        ids.push_back({obj, word("morphism")});
      } else if (key.text == "comp") {
        const Token f = word("morphism");
        const Token g = word("morphism");
        expect("=");
        comps.push_back({f, g, word("morphism")});
      } else {
        throw SyntaxError(key.at, "unknown groupoid statement '" + key.text + "'");
      }
      if (end_statement()) break;
    }
    const std::size_t nm = t.morphism_names.size();
    t.identity.assign(t.object_names.size(), kNoMorphism);
    for (const auto& [obj, mor] : ids) {
      const auto x = resolve(object, obj, "object");
      if (t.identity[x] != kNoMorphism) throw DuplicateNameError(obj.at, "identity of '" + obj.text + "' given twice");
      t.identity[x] = resolve(morphism, mor, "morphism");
    }
    for (std::size_t x = 0; x < t.identity.size(); ++x)
      if (t.identity[x] == kNoMorphism)
        throw ValidatorError(e.at, "object '" + t.object_names[x] + "' has no identity declared");
    t.composition.assign(nm * nm, kNoMorphism);
    for (const auto& [f, g, h] : comps) {
      const auto a = resolve(morphism, f, "morphism");
      const auto b = resolve(morphism, g, "morphism");
      auto& slot = t.composition[a * nm + b];
      if (slot != kNoMorphism) throw DuplicateNameError(f.at, "composite " + f.text + " " + g.text + " given twice");
      slot = resolve(morphism, h, "morphism");
    }
    // compositions with identities default to the other factor
    for (std::size_t x = 0; x < t.identity.size(); ++x) {
      const MorphismId i = t.identity[x];
      if (t.source[i] != x || t.target[i] != x)
        throw ValidatorError(e.at, "identity of '" + t.object_names[x] + "' is not a loop at it");
      for (MorphismId m = 0; m < nm; ++m) {
        if (t.target[m] == x && t.composition[m * nm + i] == kNoMorphism) t.composition[m * nm + i] = m;
        if (t.source[m] == x && t.composition[i * nm + m] == kNoMorphism) t.composition[i * nm + m] = m;
      }
    }
    t.inverse.assign(nm, kNoMorphism);
    for (MorphismId a = 0; a < nm; ++a) {
      for (MorphismId b = 0; b < nm && t.inverse[a] == kNoMorphism; ++b) {
        if (t.composition[a * nm + b] == t.identity[t.source[a]] && t.composition[b * nm + a] == t.identity[t.target[a]])
          t.inverse[a] = b;
      }
      if (t.inverse[a] == kNoMorphism)
        throw ValidatorError(e.at, "morphism '" + t.morphism_names[a] + "' has no inverse in the composition table");
    }
    try {
      FiniteGroupoid g(std::move(t));
      auto report = validate_groupoid(g);
      if (!report.empty())
        throw ValidatorError(e.at, "groupoid '" + e.name + "' fails " + axiom_name(report.front().axiom) + ": " +
                                       report.front().message);
      return g;
    } catch (const StructuralError& err) {
      throw ValidatorError(e.at, "groupoid '" + e.name + "': " + err.what());
    }
  }

  Rational rational(const Token& first) {
    Integer p(number(first));
    if (!accept("/")) return Rational(p);
    const Token den = next();
    const std::size_t q = number(den);
    if (q == 0) throw SyntaxError(den.at, "zero denominator");
    return Rational(p, Integer(q));
  }

  std::vector<SectorData> parse_sectors_body() {
    std::vector<SectorData> out;
    if (accept("}")) return out;
    for (;;) {
      const Token key = word("'sector'");
      if (key.text != "sector") throw SyntaxError(key.at, "expected 'sector', found '" + key.text + "'");
      SectorData s;
      s.id = std::to_string(out.size());
      // optional label before the fields
      if (is_word(peek()) && peek().text != "age" && peek().text != "betti") s.id = next().text;
      bool have_age = false;
      bool have_betti = false;
      while (is_word(peek())) {
        const Token field = next();
        if (field.text == "age") {
          s.age = rational(next());
          have_age = true;
        } else if (field.text == "betti") {
          while (is_word(peek()) && peek().text != "age") s.betti.push_back(number(next()));
          have_betti = true;
        } else {
          throw SyntaxError(field.at, "unknown sector field '" + field.text + "'");
        }
      }
      if (!have_age || !have_betti) throw SyntaxError(key.at, "a sector needs both 'age' and 'betti'");
      out.push_back(std::move(s));
      if (end_statement()) break;
    }
    return out;
  }

  std::vector<Token> toks_;
  const WorkbenchInput* context_;  // earlier definitions visible to references
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a document. Names it references but does not define are looked
/// up in `context` when one is given.
inline WorkbenchInput parse_input(std::string_view text, const WorkbenchInput* context = nullptr) {
  return detail::Parser(text, context).parse();
}

/// Definitions every invocation starts from; a user entity of the same name
/// replaces the builtin one.
inline constexpr std::string_view kPrelude = R"(
group trivial { elements e ; table e }
group Z2 { elements e s ; table e s / s e }
group Z3 { elements e g g2 ; table e g g2 / g g2 e / g2 e g }
group Z4 { elements e g g2 g3 ; table e g g2 g3 / g g2 g3 e / g2 g3 e g / g3 e g g2 }
# permutations of 1 2 3 by their images, multiplied left to right
group S3 {
  elements e p132 p213 p231 p312 p321 ;
  table e p132 p213 p231 p312 p321
      / p132 e p231 p213 p321 p312
      / p213 p312 e p321 p132 p231
      / p231 p321 p132 p312 e p213
      / p312 p213 p321 e p231 p132
      / p321 p231 p312 p132 p213 e
}
action S3X { group S3 ; points 1 2 3 ;
  act p132 : 2->3 3->2 ; act p213 : 1->2 2->1 ; act p231 : 1->2 2->3 3->1 ;
  act p312 : 1->3 2->1 3->2 ; act p321 : 1->3 3->1 }
sectors ptS3 { sector e age 0 betti 1 ; sector p132 age 0 betti 1 ; sector p231 age 0 betti 1 }
)";

inline const WorkbenchInput& prelude() {
  static const WorkbenchInput p = [] {
    auto in = parse_input(kPrelude);
    for (auto& e : in.entities) e.builtin = true;
    return in;
  }();
  return p;
}

/// Parses a user document on top of the prelude. User entities come after
/// the builtin ones and replace any builtin of the same name.
inline WorkbenchInput load_document(std::string_view text) {
  const WorkbenchInput user = parse_input(text, &prelude());
  WorkbenchInput merged;
  for (const auto& e : prelude().entities)
    if (user.find(e.name) == nullptr) merged.entities.push_back(e);
  for (const auto& e : user.entities) merged.entities.push_back(e);
  merged.options = user.options;
  return merged;
}

}  // namespace orbinerve::workbench
