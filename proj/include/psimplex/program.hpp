#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psimplex/rule.hpp"

namespace psimplex {

class Program;

// Fluent construction of a single rule; finished implicitly when the next
// rule starts or the builder goes out of scope.
class RuleBuilder {
 public:
  RuleBuilder(Program& program, std::size_t index) : program_(&program), index_(index) {}

  RuleBuilder& from(StateId s);
  RuleBuilder& to(StateId s);
  template <class... Specs>
  RuleBuilder& consume(Specs&&... specs);
  template <class... Specs>
  RuleBuilder& produce(Specs&&... specs);
  template <class... Specs>
  RuleBuilder& broadcast(Specs&&... specs);
  template <class... Specs>
  RuleBuilder& promoter(Specs&&... specs);
  RuleBuilder& mode(RuleMode m);

 private:
  Rule& rule();
  Program* program_;
  std::size_t index_;
};

// A linearly ordered rule set plus the state-name table it is written
// against. Position in the rule list is the weak-priority rank.
class Program {
 public:
  StateId state(const std::string& name) {
    auto it = state_ids_.find(name);
    if (it != state_ids_.end()) return it->second;
    StateId id = static_cast<StateId>(state_names_.size());
    state_ids_.emplace(name, id);
    state_names_.push_back(name);
    return id;
  }
  const std::string& state_name(StateId id) const {
    return state_names_.at(static_cast<std::size_t>(id));
  }
  StateId find_state(const std::string& name) const {
    auto it = state_ids_.find(name);
    if (it == state_ids_.end()) throw std::out_of_range("unknown state: " + name);
    return it->second;
  }
  int state_count() const { return static_cast<int>(state_names_.size()); }

  RuleBuilder add_rule(std::string name) {
    Rule r;
    r.name = std::move(name);
    rules_.push_back(std::move(r));
    index_dirty_ = true;
    return RuleBuilder(*this, rules_.size() - 1);
  }

  const std::vector<Rule>& rules() const { return rules_; }
  Rule& rule_at(std::size_t i) {
    index_dirty_ = true;
    return rules_[i];
  }

  // Rule indices applicable in a state, in priority order.
  const std::vector<std::size_t>& rules_for_state(StateId s) const {
    rebuild_index();
    static const std::vector<std::size_t> kEmpty;
    auto it = by_state_.find(s);
    return it == by_state_.end() ? kEmpty : it->second;
  }

  // Authoring sanity check: RHS variables must be bound by the LHS or the
  // promoters. Throws std::logic_error on violation.
  void check() const {
    for (const auto& r : rules_) detail::check_produced_bound(r);
  }

 private:
  friend class RuleBuilder;
  // Shared read-only programs are indexed lazily from several threads.
  void rebuild_index() const {
    std::lock_guard<std::mutex> lock(*index_mutex_);
    if (!index_dirty_) return;
    by_state_.clear();
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      by_state_[rules_[i].current_state].push_back(i);
    }
    index_dirty_ = false;
  }

  std::vector<Rule> rules_;
  std::map<std::string, StateId> state_ids_;
  std::vector<std::string> state_names_;
  mutable std::map<StateId, std::vector<std::size_t>> by_state_;
  mutable bool index_dirty_ = true;
  std::shared_ptr<std::mutex> index_mutex_ = std::make_shared<std::mutex>();
};

inline Rule& RuleBuilder::rule() { return program_->rule_at(index_); }
inline RuleBuilder& RuleBuilder::from(StateId s) {
  rule().current_state = s;
  return *this;
}
inline RuleBuilder& RuleBuilder::to(StateId s) {
  rule().target_state = s;
  return *this;
}
template <class... Specs>
RuleBuilder& RuleBuilder::consume(Specs&&... specs) {
  Rule& r = rule();
  (r.consumed.push_back(detail::resolve(specs, r.vars)), ...);
  return *this;
}
template <class... Specs>
RuleBuilder& RuleBuilder::produce(Specs&&... specs) {
  Rule& r = rule();
  (r.produced.push_back(detail::resolve(specs, r.vars)), ...);
  return *this;
}
template <class... Specs>
RuleBuilder& RuleBuilder::broadcast(Specs&&... specs) {
  Rule& r = rule();
  (r.broadcast.push_back(detail::resolve(specs, r.vars)), ...);
  return *this;
}
template <class... Specs>
RuleBuilder& RuleBuilder::promoter(Specs&&... specs) {
  Rule& r = rule();
  (r.promoters.push_back(detail::resolve(specs, r.vars)), ...);
  return *this;
}
inline RuleBuilder& RuleBuilder::mode(RuleMode m) {
  rule().mode = m;
  return *this;
}

}  // namespace psimplex
