class SavingsAccount extends Account {
    int rate;

    SavingsAccount(String name, int rate) {
        super(name);
        this.rate = rate;
    }

    void addInterest() {
        deposit(rate);
    }

    int projected(int years) {
        int result = rate * years;
        return result;
    }
}
