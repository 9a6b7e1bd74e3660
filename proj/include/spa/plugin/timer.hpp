// Wall-clock and event-count instrumentation for one solver run.
#pragma once

#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>

#include "spa/plugin/plugin.hpp"

namespace spa::plugin {

class TimerPlugin final : public Plugin {
 public:
  struct Counts {
    uint64_t pointsToSets = 0;
    uint64_t callEdges = 0;
    uint64_t methods = 0;
    uint64_t stmts = 0;
  };

  explicit TimerPlugin(std::ostream* out = nullptr) : out_(out) {}

  void onStart(SolverAPI&) override {
    start_ = std::chrono::steady_clock::now();
  }
  void onNewPointsToSet(pta::CSVar*, const pta::PointsToSet&) override {
    ++counts_.pointsToSets;
  }
  void onNewCallEdge(const pta::CallEdge&) override { ++counts_.callEdges; }
  void onNewMethod(const pta::CSMethod*) override { ++counts_.methods; }
  void onNewStmt(const ir::Stmt&, const pta::CSMethod*) override {
    ++counts_.stmts;
  }
  void onFinish() override {
    elapsed_ = std::chrono::steady_clock::now() - start_;
    if (out_) *out_ << summary();
  }

  const Counts& counts() const { return counts_; }
  double elapsedSeconds() const {
    return std::chrono::duration<double>(elapsed_).count();
  }
  std::string summary() const {
    return "analysis time: " + std::to_string(elapsedSeconds()) + "s" +
           " | points-to events: " + std::to_string(counts_.pointsToSets) +
           " | call edges: " + std::to_string(counts_.callEdges) +
           " | methods: " + std::to_string(counts_.methods) +
           " | stmts: " + std::to_string(counts_.stmts) + "\n";
  }

 private:
  std::ostream* out_;
  std::chrono::steady_clock::time_point start_{};
  std::chrono::steady_clock::duration elapsed_{};
  Counts counts_;
};

}  // namespace spa::plugin
