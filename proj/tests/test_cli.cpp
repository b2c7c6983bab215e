// placeholder; replaced by the end-to-end command-line tests
int main() { return 0; }
