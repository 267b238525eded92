#include <stdio.h>
#include <string.h>

#include "vcwb.h"

int main(void) {
    VcwbReport *report = NULL;
    if (vcwb_classify("builtin:vhat-svec-1", "builtin:canonical", &report) != VCWB_STATUS_OK) {
        return 10;
    }
    if (vcwb_report_verdict(report) != VCWB_VERDICT_PASS) {
        return 11;
    }
    char *doc = vcwb_report_output(report);
    if (doc == NULL || strstr(doc, "\"e\"") == NULL) {
        return 12;
    }
    vcwb_string_free(doc);
    vcwb_report_free(report);

    VcwbCategory *cat = NULL;
    if (vcwb_category_from_json("{", &cat) != VCWB_STATUS_PARSE || cat != NULL) {
        return 13;
    }
    char *msg = vcwb_last_error();
    printf("%s\n", msg);
    vcwb_string_free(msg);
    return 0;
}
