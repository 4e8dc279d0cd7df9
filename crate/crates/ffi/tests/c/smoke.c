#include <stdio.h>
#include <string.h>
#include "nilalg.h"

int main(void) {
    NilalgIdeal *h = NULL;
    if (nilalg_ideal_new(2, 0, &h) != NILALG_STATUS_OK) return 10;
    bool member = false;
    if (nilalg_ideal_contains(h, "x1.x2 + x2.x1", &member) != NILALG_STATUS_OK || !member) return 11;
    uint32_t degree = 0;
    char *json = NULL;
    if (nilalg_nilpotency_degree(h, 2, 8, &degree, &json) != NILALG_STATUS_OK || degree != 3) return 12;
    if (strstr(json, "\"degree\":3") == NULL) return 13;
    nilalg_string_free(json);
    if (nilalg_ideal_contains(h, "x1^^2", &member) != NILALG_STATUS_PARSE) return 14;
    if (strlen(nilalg_last_error()) == 0) return 15;
    nilalg_ideal_free(h);
    NilalgIdeal *bad = NULL;
    if (nilalg_ideal_new(2, 4, &bad) != NILALG_STATUS_INVALID_ARGUMENT || bad != NULL) return 16;
    printf("ok %s\n", nilalg_version());
    return 0;
}
