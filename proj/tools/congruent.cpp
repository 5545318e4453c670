// placeholder; full CLI lands with the survey module
int main() { return 0; }
