#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mrsc/drive.hpp"
#include "mrsc/graphset.hpp"
#include "mrsc/lang.hpp"

namespace mrsc {

enum class HistoryKind { Local, Global };

struct HistoryEntry {
  HistoryKind kind;
  std::size_t level;
  Exp config;
};

// Homeomorphic embedding: `a` is embedded in `b`.
bool embeds(const Exp& a, const Exp& b);

struct EngineOptions {
  std::size_t maxGraphSetNodes = 10'000'000;
};

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Builds the lazy graph of all configuration graphs reachable from `c0`.
GraphSet mrScp(const Program& p, const Exp& c0, const EngineOptions& opts = {});
GraphSet mrScp(const Program& p, const Exp& c0, FreshSource& fresh,
               const EngineOptions& opts = {});

}  // namespace mrsc
