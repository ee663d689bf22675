class Customer {
    String name;
    Account account;
    int visits;

    Customer(String name) {
        this.name = name;
        account = new SavingsAccount(name, 2);
    }

    void visit() {
        visits = visits + 1;
    }

    Account getAccount() {
        return account;
    }

    String label() {
        return name;
    }
}
