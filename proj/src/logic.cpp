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

#include "bddl/logic.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bddl/errors.hpp"

namespace bddl {

namespace {

struct Compiler {
  const GroundScope& scope;
  const Taxonomy& taxonomy;
  const SceneState& scene;
  int next_leaf_index = 0;

  // Variable environment for quantifier expansion; inner bindings shadow.
  std::map<std::string, std::string> env;

  std::string resolve(const std::string& arg) {
    if (!arg.empty() && arg[0] == '?') {
      const auto it = env.find(arg);
      if (it == env.end()) throw UnboundTermError(arg);
      return it->second;
    }
    return scope.instance_of(arg);
  }

  CompiledCondition constant(bool value) {
    CompiledCondition node;
    node.kind = CompiledCondition::Kind::Constant;
    node.constant_value = value;
    return node;
  }

  CompiledCondition leaf(const Condition& atom, bool negated) {
    CompiledCondition node;
    node.kind = CompiledCondition::Kind::Leaf;
    node.negated = negated;
    node.atom.predicate = atom.predicate;
    for (const auto& arg : atom.args) {
      node.atom.instances.push_back(resolve(arg));
    }
    node.leaf_index = next_leaf_index++;
    return node;
  }

  // `negated` carries the pending negation downward so that Not only ever
  // lands on atoms (negation normal form).
  CompiledCondition run(const Condition& c, bool negated) {
    switch (c.kind) {
      case ConditionKind::Atom:
        return leaf(c, negated);
      case ConditionKind::Not:
        return run(c.children[0], !negated);
      case ConditionKind::And:
      case ConditionKind::Or: {
        const bool as_and = (c.kind == ConditionKind::And) != negated;
        CompiledCondition node;
        node.kind = as_and ? CompiledCondition::Kind::And
                           : CompiledCondition::Kind::Or;
        for (const auto& child : c.children) {
          node.children.push_back(run(child, negated));
        }
        return node;
      }
      case ConditionKind::Imply: {
        if (negated) {  // !(a -> b)  ==  a && !b
          CompiledCondition node;
          node.kind = CompiledCondition::Kind::And;
          node.children.push_back(run(c.children[0], false));
          node.children.push_back(run(c.children[1], true));
          return node;
        }
        CompiledCondition node;
        node.kind = CompiledCondition::Kind::Imply;
        node.children.push_back(run(c.children[0], false));
        node.children.push_back(run(c.children[1], false));
        return node;
      }
      case ConditionKind::ForAll:
      case ConditionKind::Exists:
      case ConditionKind::ForN: {
        const std::vector<std::string> candidates =
            candidate_instances(taxonomy, c.synset, scene);

        // Effective quantifier under negation: !forall = exists(!body),
        // !exists = forall(!body), !(>=n) = >=(k-n+1) of negated bodies.
        ConditionKind kind = c.kind;
        if (negated && kind == ConditionKind::ForAll) kind = ConditionKind::Exists;
        else if (negated && kind == ConditionKind::Exists) kind = ConditionKind::ForAll;

        if (candidates.empty()) {
          if (kind == ConditionKind::ForAll) return constant(true);
          if (kind == ConditionKind::Exists) return constant(false);
          // at-least-n over nothing is false; its negation is true
          return constant(negated);
        }

        CompiledCondition node;
        if (kind == ConditionKind::ForAll) {
          node.kind = CompiledCondition::Kind::And;
        } else if (kind == ConditionKind::Exists) {
          node.kind = CompiledCondition::Kind::Or;
          node.from_exists = true;
        } else {
          node.kind = CompiledCondition::Kind::AtLeastN;
          const int k = static_cast<int>(candidates.size());
          node.at_least = negated ? k - c.count + 1 : c.count;
          if (node.at_least > k) return constant(false);
          if (node.at_least < 1) return constant(true);
        }

        const auto saved = env.find(c.variable) != env.end()
                               ? std::optional<std::string>(env[c.variable])
                               : std::nullopt;
        for (const auto& candidate : candidates) {
          env[c.variable] = candidate;
          node.children.push_back(run(c.children[0], negated));
        }
        if (saved) {
          env[c.variable] = *saved;
        } else {
          env.erase(c.variable);
        }
        return node;
      }
    }
    throw Error("unreachable condition kind");
  }
};

std::string bound_atom_expr(const BoundAtom& atom, bool negated) {
  std::ostringstream out;
  if (negated) out << "(not ";
  out << '(' << atom.predicate;
  for (const auto& id : atom.instances) out << ' ' << id;
  out << ')';
  if (negated) out << ')';
  return out.str();
}

struct Score {
  int satisfied = 0;
  std::vector<LeafResult> leaves;

  void append(Score other) {
    satisfied += other.satisfied;
    leaves.insert(leaves.end(), std::make_move_iterator(other.leaves.begin()),
                  std::make_move_iterator(other.leaves.end()));
  }
};

std::string compiled_to_expr(const CompiledCondition& node) {
  switch (node.kind) {
    case CompiledCondition::Kind::Constant:
      return node.constant_value ? "(true)" : "(false)";
    case CompiledCondition::Kind::Leaf:
      return bound_atom_expr(node.atom, node.negated);
    case CompiledCondition::Kind::And:
    case CompiledCondition::Kind::Or:
    case CompiledCondition::Kind::AtLeastN:
    case CompiledCondition::Kind::Imply: {
      std::string head = node.kind == CompiledCondition::Kind::And   ? "and"
                         : node.kind == CompiledCondition::Kind::Or  ? "or"
                         : node.kind == CompiledCondition::Kind::Imply
                             ? "imply"
                             : "atleast-" + std::to_string(node.at_least);
      std::string out = "(" + head;
      for (const auto& child : node.children) {
        out += ' ';
        out += compiled_to_expr(child);
      }
      return out + ")";
    }
  }
  return "()";
}

Score score_node(const CompiledCondition& node, const AtomEvaluator& atoms) {
  switch (node.kind) {
    case CompiledCondition::Kind::Constant:
      return {};
    case CompiledCondition::Kind::Leaf: {
      const bool atom_true = atoms(node.leaf_index, node.atom);
      const bool ok = atom_true != node.negated;
      Score s;
      s.satisfied = ok ? 1 : 0;
      s.leaves.push_back({bound_atom_expr(node.atom, node.negated), ok});
      return s;
    }
    case CompiledCondition::Kind::And:
    case CompiledCondition::Kind::AtLeastN: {
      Score s;
      for (const auto& child : node.children) {
        s.append(score_node(child, atoms));
      }
      return s;
    }
    case CompiledCondition::Kind::Or: {
      if (!node.from_exists) {
        Score s;
        for (const auto& child : node.children) {
          s.append(score_node(child, atoms));
        }
        return s;
      }
      // Best disjunct by satisfied-leaf count; ties go to the earliest child.
      Score best;
      bool have_best = false;
      for (const auto& child : node.children) {
        Score s = score_node(child, atoms);
        if (!have_best || s.satisfied > best.satisfied) {
          best = std::move(s);
          have_best = true;
        }
      }
      return best;
    }
    case CompiledCondition::Kind::Imply: {
      if (evaluate(node.children[0], atoms)) {
        return score_node(node.children[1], atoms);
      }
      Score s;
      s.satisfied = 1;
      s.leaves.push_back(
          {"(imply " + compiled_to_expr(node.children[0]) + " _) [vacuous]", true});
      return s;
    }
  }
  return {};
}

}  // namespace

int CompiledCondition::leaf_count() const {
  if (kind == Kind::Leaf) return 1;
  int total = 0;
  for (const auto& child : children) total += child.leaf_count();
  return total;
}

AtomEvaluator scene_evaluator(const SceneState& scene, const PredicateParams& p) {
  return [&scene, &p](int, const BoundAtom& atom) {
    if (atom.instances.size() != 2) {
      throw UnknownPredicateError(atom.predicate + "/" +
                                  std::to_string(atom.instances.size()));
    }
    return eval_ground(atom.predicate, atom.instances[0], atom.instances[1],
                       scene, p);
  };
}

CompiledCondition compile(const Condition& condition, const GroundScope& scope,
                          const Taxonomy& taxonomy, const SceneState& scene) {
  Compiler compiler{scope, taxonomy, scene};
  return compiler.run(condition, false);
}

bool evaluate(const CompiledCondition& compiled, const AtomEvaluator& atoms) {
  switch (compiled.kind) {
    case CompiledCondition::Kind::Constant:
      return compiled.constant_value;
    case CompiledCondition::Kind::Leaf:
      return atoms(compiled.leaf_index, compiled.atom) != compiled.negated;
    case CompiledCondition::Kind::And: {
      for (const auto& child : compiled.children) {
        if (!evaluate(child, atoms)) return false;
      }
      return true;
    }
    case CompiledCondition::Kind::Or: {
      for (const auto& child : compiled.children) {
        if (evaluate(child, atoms)) return true;
      }
      return false;
    }
    case CompiledCondition::Kind::AtLeastN: {
      int count = 0;
      for (const auto& child : compiled.children) {
        if (evaluate(child, atoms)) ++count;
      }
      return count >= compiled.at_least;
    }
    case CompiledCondition::Kind::Imply:
      return !evaluate(compiled.children[0], atoms) ||
             evaluate(compiled.children[1], atoms);
  }
  return false;
}

bool evaluate(const CompiledCondition& compiled, const SceneState& scene,
              const PredicateParams& p) {
  return evaluate(compiled, scene_evaluator(scene, p));
}

GoalReport score_goal(const CompiledCondition& compiled, const AtomEvaluator& atoms) {
  GoalReport report;
  report.satisfied = evaluate(compiled, atoms);
  Score score = score_node(compiled, atoms);
  if (score.leaves.empty()) {
    // Degenerate all-constant goal; report it as a single synthetic leaf so
    // q_score stays well defined.
    score.leaves.push_back({"(constant)", report.satisfied});
    score.satisfied = report.satisfied ? 1 : 0;
  }
  report.leaf_results = std::move(score.leaves);
  report.q_score = static_cast<double>(score.satisfied) /
                   static_cast<double>(report.leaf_results.size());
  return report;
}

GoalReport score_goal(const CompiledCondition& compiled, const SceneState& scene,
                      const PredicateParams& p) {
  return score_goal(compiled, scene_evaluator(scene, p));
}

Condition init_conjunction(const Activity& activity) {
  std::vector<Condition> entries;
  for (const auto& entry : activity.init) {
    const Condition& atom =
        entry.kind == ConditionKind::Not ? entry.children[0] : entry;
    if (atom.predicate == kInRoomPredicate) continue;
    entries.push_back(entry);
  }
  if (entries.empty()) {
    // All entries were inroom directives; the check is vacuously true.
    return Condition::conjunction({});
  }
  return Condition::conjunction(std::move(entries));
}

GoalReport check_init(const Activity& activity, const GroundScope& scope,
                      const Taxonomy& taxonomy, const SceneState& scene,
                      const PredicateParams& p) {
  const Condition conjunction = init_conjunction(activity);
  if (conjunction.children.empty()) {
    GoalReport report;
    report.satisfied = true;
    report.leaf_results.push_back({"(constant)", true});
    report.q_score = 1.0;
    return report;
  }
  const CompiledCondition compiled = compile(conjunction, scope, taxonomy, scene);
  return score_goal(compiled, scene, p);
}

std::string GoalReport::to_json() const {
  nlohmann::ordered_json j;
  j["satisfied"] = satisfied;
  j["q_score"] = q_score;
  j["leaves"] = nlohmann::ordered_json::array();
  for (const auto& leaf : leaf_results) {
    nlohmann::ordered_json jl;
    jl["expr"] = leaf.expr;
    jl["ok"] = leaf.ok;
    j["leaves"].push_back(std::move(jl));
  }
  return j.dump();
}

}  // namespace bddl
