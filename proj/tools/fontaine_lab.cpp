// placeholder; replaced by the full command-line tool
int main() { return 0; }
