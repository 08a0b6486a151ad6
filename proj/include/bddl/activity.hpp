// Copyright 2026 The bddlkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BDDL_ACTIVITY_HPP
#define BDDL_ACTIVITY_HPP

#include <functional>
#include <string>
#include <vector>

namespace bddl {

enum class TokenKind { OpenParen, CloseParen, Symbol, Variable, Keyword };

/// One lexeme of a BDDL problem file. Variables begin with '?', keywords
/// with ':'. line/column are 1-based positions into the source text.
struct Token {
  TokenKind kind;
  std::string text;
  int line = 1;
  int column = 1;

  bool operator==(const Token&) const = default;
};

enum class ConditionKind { Atom, Not, And, Or, Imply, ForAll, Exists, ForN };

/// Recursive logic tree. Which fields are meaningful depends on kind:
///   Atom                -> predicate, args
///   Not/And/Or/Imply    -> children (1 / >=1 / >=1 / exactly 2)
///   ForAll/Exists       -> variable, synset, children[0]
///   ForN                -> count, variable, synset, children[0]
struct Condition {
  ConditionKind kind = ConditionKind::Atom;

  std::string predicate;
  std::vector<std::string> args;

  std::string variable;
  std::string synset;
  int count = 0;

  std::vector<Condition> children;

  bool operator==(const Condition&) const = default;

  static Condition atom(std::string predicate, std::vector<std::string> args) {
    Condition c;
    c.kind = ConditionKind::Atom;
    c.predicate = std::move(predicate);
    c.args = std::move(args);
    return c;
  }

  static Condition negation(Condition child) {
    Condition c;
    c.kind = ConditionKind::Not;
    c.children.push_back(std::move(child));
    return c;
  }

  static Condition conjunction(std::vector<Condition> children) {
    Condition c;
    c.kind = ConditionKind::And;
    c.children = std::move(children);
    return c;
  }

  static Condition disjunction(std::vector<Condition> children) {
    Condition c;
    c.kind = ConditionKind::Or;
    c.children = std::move(children);
    return c;
  }

  static Condition implication(Condition antecedent, Condition consequent) {
    Condition c;
    c.kind = ConditionKind::Imply;
    c.children.push_back(std::move(antecedent));
    c.children.push_back(std::move(consequent));
    return c;
  }

  static Condition quantifier(ConditionKind kind, std::string variable,
                              std::string synset, Condition body, int count = 0) {
    Condition c;
    c.kind = kind;
    c.variable = std::move(variable);
    c.synset = std::move(synset);
    c.count = count;
    c.children.push_back(std::move(body));
    return c;
  }
};

/// Applies fn to every atom in the tree, including atoms under quantifiers.
void for_each_atom(const Condition& condition,
                   const std::function<void(const Condition&)>& fn);

/// One declared object of a BDDL problem: a term name typed by a synset.
struct ObjectDecl {
  std::string term;
  std::string synset;

  bool operator==(const ObjectDecl&) const = default;
};

/// A parsed BDDL problem. init entries are atoms or single negations of
/// atoms; goal is an arbitrary condition tree.
struct Activity {
  std::string problem_name;
  std::string domain_name;
  std::vector<ObjectDecl> objects;
  std::vector<Condition> init;
  Condition goal;

  bool operator==(const Activity&) const = default;
};

struct KinematicClassification {
  bool kinematic_only = true;
  std::vector<std::string> unsupported_predicates;  // sorted, deduplicated

  bool operator==(const KinematicClassification&) const = default;
};

/// Predicate name consumed by the sampler as a room-binding directive; it is
/// never evaluated and never counts against kinematic classification.
inline constexpr const char* kInRoomPredicate = "inroom";

}  // namespace bddl

#endif  // BDDL_ACTIVITY_HPP
