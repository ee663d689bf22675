class Bank implements Auditable {
    Customer first;
    Customer second;
    int total;

    Bank() {
        first = new Customer("ann");
        second = new Customer("bob");
    }

    void open() {
        first.visit();
        second.visit();
        Account acct = first.getAccount();
        acct.deposit(100);
    }

    int sum() {
        total = first.getAccount().getBalance() + second.getAccount().getBalance();
        return total;
    }

    void audit(Auditor auditor) {
        auditor.inspect(this);
        log("audit done");
    }

    void log(String message) {
        // first.visit(); total = 0;
    }
}
