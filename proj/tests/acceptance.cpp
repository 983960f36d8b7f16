// Acceptance suite: runs every criterion exactly and prints one line each.
// Usage: acceptance [path-to-cli]; the CLI path feeds the determinism check.

#include <iostream>

#include <polymem/verify.hpp>

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";
    int failed = 0;
    try {
        const auto results = polymem::verify::run_suite("all", cli_path);
        for (const auto& r : results) {
            std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << " ("
                      << r.name << "): " << r.detail << "\n";
            if (!r.passed) ++failed;
        }
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 2;
    }
    if (failed) {
        std::cout << failed << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
