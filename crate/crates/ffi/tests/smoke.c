#include <stdio.h>
#include <string.h>
#include "tightspace.h"

static const char *G2 =
    "{\"vertices\":[\"u\",\"w\"],"
    "\"edges\":[{\"id\":\"f\",\"src\":\"u\",\"rng\":\"w\",\"label\":\"a\"}],"
    "\"family\":\"power_set\"}";

int main(void) {
    TsSpace *space = NULL;
    if (ts_space_from_json(G2, &space) != TS_STATUS_OK) return 1;
    size_t finite = 0, lassos = 0;
    bool exhaustive = false;
    if (ts_tight_count(space, 3, 6, &finite, &lassos, &exhaustive) != TS_STATUS_OK) return 2;
    ts_space_free(space);
    if (finite != 2 || lassos != 0 || !exhaustive) return 3;

    TsReport *report = NULL;
    if (ts_run("surgery", G2, &report) != TS_STATUS_OK) return 4;
    int status = ts_report_exit_status(report);
    if (strstr(ts_report_json(report), "\"command\": \"surgery\"") == NULL) return 5;
    ts_report_free(report);
    if (status != 0) return 6;

    if (ts_space_from_json("{", &space) != TS_STATUS_INVALID_DOCUMENT) return 7;
    printf("%s\n", ts_last_error());
    return 0;
}
