/* Parses M3, checks it, and prints the verdicts and the JSON report. */
#include <stdio.h>
#include "imw.h"

static const char *M3 =
    "mtab v1\n"
    "n=3\n"
    "id=0\n"
    "labels=1,e,t\n"
    "0 1 2\n"
    "1 1 2\n"
    "2 2 1\n";

int main(void) {
    ImwMonoid *m = NULL;
    if (imw_monoid_parse_mtab(M3, &m) != IMW_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", imw_last_error_message());
        return 2;
    }
    ImwVerdicts v;
    if (imw_monoid_check(m, &v) != IMW_STATUS_OK) {
        fprintf(stderr, "check: %s\n", imw_last_error_message());
        return 2;
    }
    printf("size=%zu inverse=%d e_unitary=%d f_inverse=%d clifford=%d weakly_schreier=%d\n",
           imw_monoid_size(m), v.inverse, v.e_unitary, v.f_inverse, v.clifford, v.weakly_schreier);

    ImwMonoid *bad = NULL;
    ImwStatus s = imw_monoid_parse_mtab("mtab v1\nn=2\nid=0\n0 1\n1\n", &bad);
    printf("bad status=%d message=%s\n", (int)s, imw_last_error_message());

    int found = 0;
    size_t forward[3];
    imw_monoid_is_isomorphic(m, m, 12, &found, forward);
    printf("iso=%d forward=%zu,%zu,%zu\n", found, forward[0], forward[1], forward[2]);

    imw_monoid_free(m);
    return 0;
}
