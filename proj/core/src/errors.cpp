#include "nonequibath/errors.hpp"

#include <cstdarg>
#include <cstdio>

namespace nonequibath {

namespace {

std::string fmt(const char* pattern, ...) {
    char buf[256];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

}  // namespace

DegenerateBohrFrequency::DegenerateBohrFrequency(std::size_t la, std::size_t ua, double wa,
                                                 std::size_t lb, std::size_t ub, double wb)
    : ModelError(fmt("degenerate Bohr frequencies: transition %zu-%zu (omega %.17g) and "
                     "%zu-%zu (omega %.17g) are not separated",
                     la, ua, wa, lb, ub, wb)),
      lower_a(la), upper_a(ua), lower_b(lb), upper_b(ub), omega_a(wa), omega_b(wb) {}

ReducibleGenerator::ReducibleGenerator(std::size_t n)
    : ModelError(fmt("reducible generator: level graph has %zu connected components, "
                     "stationary state is not unique",
                     n)),
      components(n) {}

MissingFieldEntry::MissingFieldEntry(double w)
    : ConfigError(fmt("field table has no entry at Bohr frequency omega = %.17g", w)),
      omega(w) {}

StepTooLarge::StepTooLarge(double step, double lim)
    : NumericsError(fmt("integration step dt = %.17g exceeds stability guard %.17g", step, lim)),
      dt(step), limit(lim) {}

NonPositiveBeta::NonPositiveBeta(double b)
    : DomainError(fmt("occupation undefined for beta = %.17g (requires beta > 0)", b)), beta(b) {}

NonPositiveOccupation::NonPositiveOccupation(double n)
    : DomainError(fmt("local beta undefined for occupation N = %.17g (requires N > 0)", n)),
      occupation(n) {}

ZeroOccupation::ZeroOccupation(double n)
    : DomainError(fmt("emission/absorption quotient diverges for occupation N = %.17g", n)),
      occupation(n) {}

}  // namespace nonequibath
