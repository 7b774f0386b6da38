/* Pure C consumer: makes sure the header compiles as C and the basic
 * lifecycle works across the shared-library boundary. */

#include <stdio.h>
#include <string.h>

#include "flagcalc.h"

int main(void) {
  fc_context* ctx = NULL;
  char* out = NULL;
  if (fc_context_new_builtin("G2", 0, &ctx) != FC_OK) {
    fprintf(stderr, "context: %s\n", fc_last_error());
    return 1;
  }
  if (fc_weyl_order(ctx, &out) != FC_OK) {
    fprintf(stderr, "order: %s\n", fc_last_error());
    return 1;
  }
  if (strcmp(out, "12") != 0) {
    fprintf(stderr, "got order %s, expected 12\n", out);
    return 1;
  }
  fc_string_free(out);
  if (fc_context_new_builtin("B1", 0, NULL) != FC_ERR_INVALID_ARGUMENT) {
    fprintf(stderr, "null out must be rejected\n");
    return 1;
  }
  fc_context_free(ctx);
  puts("capi smoke ok");
  return 0;
}
