#define DOCTEST_CONFIG_IMPLEMENT

#include <cstdlib>

#include <doctest.h>

int main(int argc, char** argv) {
    // task-pool parallelism only; keep BLAS single-threaded for determinism
    setenv("OPENBLAS_NUM_THREADS", "1", 0);
    return doctest::Context(argc, argv).run();
}
