#include <math.h>
#include <stdio.h>
#include <string.h>

#include "hermite_bary.h"

#define CHECK(call)                                                             \
    do {                                                                        \
        HbStatus s_ = (call);                                                   \
        if (s_ != HB_STATUS_OK) {                                               \
            fprintf(stderr, "%s -> %d: %s\n", #call, s_, hb_last_error_message()); \
            return 1;                                                           \
        }                                                                       \
    } while (0)

int main(void) {
    enum { N = 24, M = 2 };
    HbGrid *grid = NULL;
    HbWeights *weights = NULL;
    HbInterpolant *interp = NULL;
    double x[N], data[N * M];

    CHECK(hb_grid_new(HB_GAUSS_JACOBI, -0.5, -0.5, N, &grid));
    CHECK(hb_grid_nodes(grid, x, N));
    CHECK(hb_weights_new(grid, M, HB_SCALING_SIMPLIFIED, HB_ALGORITHM_TWO, &weights));
    for (int k = 0; k < N; k++) {
        data[k * M] = exp(x[k]);
        data[k * M + 1] = exp(x[k]);
    }
    CHECK(hb_interpolant_new(grid, weights, data, N * M, &interp));

    double t[3] = {-1.0, 0.123, 0.9}, v[3];
    CHECK(hb_interpolant_eval(interp, t, v, 3));
    for (int i = 0; i < 3; i++) {
        if (fabs(v[i] - exp(t[i])) > 1e-13) {
            fprintf(stderr, "eval at %g: %.17g\n", t[i], v[i]);
            return 1;
        }
    }

    if (hb_grid_new(HB_GAUSS_JACOBI, -2.0, 0.0, 5, &grid) != HB_STATUS_INVALID_ARGUMENT ||
        strlen(hb_last_error_message()) == 0) {
        fprintf(stderr, "bad exponent accepted\n");
        return 1;
    }

    int8_t sign;
    double mag;
    CHECK(hb_common_factor(-0.5, -0.5, 100, 2, &sign, &mag));
    if (sign != 1 || floor(mag) != 57.0) {
        fprintf(stderr, "common factor %d %g\n", sign, mag);
        return 1;
    }

    hb_interpolant_free(interp);
    hb_weights_free(weights);
    hb_grid_free(grid);
    puts("ok");
    return 0;
}
