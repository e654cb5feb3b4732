#include <math.h>
#include <stdio.h>
#include <string.h>
#include "abshield.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (line %d)\n", #cond, __LINE__); return 1; } } while (0)

int main(void) {
    double levels[3];
    CHECK(abs_annulus_levels(1.0, 2.0, 0.5, 3, levels) == ABS_STATUS_OK);
    CHECK(fabs(levels[0] - M_PI * M_PI) < 1e-10 * M_PI * M_PI);

    CHECK(abs_annulus_levels(2.0, 1.0, 0.5, 3, levels) == ABS_STATUS_INVALID_ARGUMENT);
    CHECK(abs_last_error() != NULL);

    AbsGeometry g = {1.0, 2.0, 2.4, 3.0, 4.0, 3.5};
    AbsProfile *p = NULL;
    CHECK(abs_profile_new(&g, 50.0, 0.6, 0.0, true, false, &p) == ABS_STATUS_OK);
    double flux = 0.0;
    CHECK(abs_profile_flux_within(p, 2.2, &flux) == ABS_STATUS_OK);
    CHECK(fabs(flux - 0.5) < 1e-5);
    AbsFieldSample s;
    CHECK(abs_profile_eval(p, 2.2, &s) == ABS_STATUS_OK);
    CHECK(s.region == 2);
    abs_profile_free(p);

    char *text = NULL;
    CHECK(abs_run_command("energy", NULL, "csv", &text) == ABS_STATUS_OK);
    CHECK(strstr(text, "case,term,value") != NULL);
    abs_string_free(text);

    CHECK(abs_run_command("nonsense", NULL, "csv", &text) == ABS_STATUS_INVALID_ARGUMENT);
    CHECK(text == NULL);
    printf("ok %s\n", abs_version());
    return 0;
}
