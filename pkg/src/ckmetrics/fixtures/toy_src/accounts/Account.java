// Plain account with a transaction ledger.
class Account {
    int balance;
    String owner;
    Ledger ledger;

    Account(String name) {
        owner = name;
        balance = 0;
        ledger = new Ledger();
    }

    void deposit(int amount) {
        balance = balance + amount;
        ledger.record(amount);
    }

    void withdraw(int amount) {
        if (amount > balance) {
            return;
        }
        this.balance = this.balance - amount;
        ledger.record(0 - amount);
    }

    int getBalance() {
        return balance;
    }

    String describe() {
        /* getBalance() is deliberately not called here */
        return owner + ": " + "deposit(1)";
    }
}
