class Auditor {
    int checked;
    AuditError lastError;

    void inspect(Bank bank) {
        checked = checked + 1;
        int value = bank.sum();
        if (value < 0) {
            lastError = new AuditError("negative");
        }
    }

    int count() {
        return checked;
    }
}

class AuditError extends Exception {
    String reason;

    AuditError(String reason) {
        this.reason = reason;
    }
}
