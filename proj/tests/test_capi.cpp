#include <lcbp.h>
int main(){return 1;}
