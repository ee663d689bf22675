class Ledger {
    int count;
    int total;

    Ledger() {
        count = 0;
        total = 0;
    }

    void record(int amount) {
        count = count + 1;
        total = total + amount;
    }

    int average() {
        return total / count;
    }

    void reset() {
        clear();
    }

    void clear() {
        count = 0;
    }
}
