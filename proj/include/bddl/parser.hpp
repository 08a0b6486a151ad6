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

#ifndef BDDL_PARSER_HPP
#define BDDL_PARSER_HPP

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bddl/activity.hpp"

namespace bddl {

/// The six predicates the engine can evaluate, by lexed (lower-case) name.
const std::set<std::string>& kinematic_predicates();

/// Splits source into tokens. Comments (';' to end of line) are dropped.
/// Keyword tokens are lower-cased; all other token text is preserved.
/// Throws IllegalCharacterError for bytes outside the s-expression alphabet.
std::vector<Token> tokenize(std::string_view source);

/// Parses a BDDL problem file into a validated Activity.
///
/// Grammar (sections in this order, each exactly once):
///   (define (problem NAME)
///     (:domain NAME)
///     (:objects term... - synset ...)
///     (:init entry...)            ; entries: atom | (not atom), >= 1 entry
///     (:goal condition))
/// Conditions: atom | and | or | not | imply | forall | exists | forn.
///
/// Throws SyntaxError for malformed s-expressions and SemanticError for
/// undeclared terms, duplicate declarations, or unknown sections.
Activity parse_activity(std::string_view source);

/// Validates the Activity invariants (unique terms, declared references,
/// connective arities). parse_activity output always passes; hand-built
/// activities are checked here before serialization.
void validate_activity(const Activity& activity);

/// Renders activity back to BDDL text. parse_activity(serialize_activity(a))
/// is structurally equal to a.
std::string serialize_activity(const Activity& activity);

/// Collects every atom predicate in init and goal; unsupported_predicates
/// are those outside `supported` (inroom directives never count).
KinematicClassification classify_kinematic(const Activity& activity);
KinematicClassification classify_kinematic(const Activity& activity,
                                           const std::set<std::string>& supported);

/// Serializes one condition as a single-line s-expression.
std::string condition_to_sexpr(const Condition& condition);

}  // namespace bddl

#endif  // BDDL_PARSER_HPP
