#include "phasemc/acceptance.hpp"

int main() {
    const bool ok = phasemc::acceptance::report(phasemc::acceptance::run_all());
    return ok ? 0 : 1;
}
