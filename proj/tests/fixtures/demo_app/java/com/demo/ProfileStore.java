package com.demo;

import java.io.File;
import org.apache.commons.io.FileUtils;
import org.slf4j.Logger;
import org.slf4j.LoggerFactory;

public class ProfileStore {

    public String exportProfile(String ssn, File vault) {
        String record = ssn;
        FileUtils.writeStringToFile(vault, record);
        Logger logger = LoggerFactory.getLogger(ProfileStore.class);
        logger.info(record);
        return record;
    }

    public void recordLogin(String accountId) {
        Logger logger = LoggerFactory.getLogger(ProfileStore.class);
        logger.info(accountId);
    }
}
