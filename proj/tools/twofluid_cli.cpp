// placeholder; replaced by the full CLI below
int main() { return 0; }
