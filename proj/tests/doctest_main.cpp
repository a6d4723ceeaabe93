#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

// argv[0] lets CLI-driving tests locate the mlsketch binary, which lands in
// the same output directory.
const char* g_test_argv0 = nullptr;

int main(int argc, char** argv) {
    g_test_argv0 = argv[0];
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}
