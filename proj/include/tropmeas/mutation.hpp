#pragma once

// Deliberate defects that can be switched on at runtime to check that the
// verification campaigns are able to fail. Off unless a ScopedDefect is alive.

namespace tropmeas {

enum class Defect {
  kNone,
  kDropAbsInCost,        // cost uses (lambda_2k - lambda_1j) instead of |.|
  kSkipTruncation,       // rho_I returns H without min{diam, .}
  kSkipColumnWitnesses,  // H only takes the row-witness bound
};

Defect active_defect();
const char* to_string(Defect d);

class ScopedDefect {
 public:
  explicit ScopedDefect(Defect d);
  ~ScopedDefect();
  ScopedDefect(const ScopedDefect&) = delete;
  ScopedDefect& operator=(const ScopedDefect&) = delete;

 private:
  Defect previous_;
};

}  // namespace tropmeas
